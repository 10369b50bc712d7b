#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "radiuslab/catalog.hpp"

namespace radiuslab {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    std::vector<BoundSelector> bounds;
    EnsembleKind ensemble = EnsembleKind::Ginibre;
    std::optional<EnsembleKind> pair_ensemble;  ///< T's ensemble; defaults to `ensemble`
    std::size_t dim_lo = 2;
    std::size_t dim_hi = 16;  ///< trial i uses dim_lo + i mod (dim_hi - dim_lo + 1)
    double scale = 1.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    EvalSettings eval{};
    std::string output_path;  ///< empty means stdout
    OutputFormat format = OutputFormat::Json;
    unsigned threads = 0;     ///< 0: RADIUSLAB_THREADS, else hardware concurrency

    /// Throws BadConfig.
    void validate() const;
    std::size_t dim_for(std::size_t trial) const noexcept;
};

/// A matrix (or pair, or lemma inputs) that produced a report.
struct Witness {
    std::optional<ComplexMatrix> s;
    std::optional<ComplexMatrix> t;
    std::vector<Complex> x;
    std::vector<Complex> y;
};

struct BoundAggregate {
    std::string bound_id;
    std::size_t trials = 0;
    std::size_t applicable_count = 0;
    std::size_t pass_count = 0;
    std::size_t error_count = 0;
    std::string first_error;
    double min_slack = 0.0;           ///< over applicable trials
    double mean_slack = 0.0;
    double min_relative_slack = 0.0;  ///< slack / scale; picks the worst witness
    std::optional<std::size_t> worst_trial;
    std::optional<BoundReport> worst_report;
    Witness worst_witness;

    bool failed() const noexcept { return pass_count < applicable_count || error_count > 0; }
};

struct CompareSummary {
    std::string tighter;
    std::string looser;
    std::string quantity;
    std::size_t compared = 0;    ///< trials where both were applicable
    std::size_t violations = 0;  ///< rhs(tighter) > rhs(looser) + tol * scale
    double max_relative_excess = 0.0;
    double mean_gap = 0.0;       ///< mean of rhs(looser) - rhs(tighter)
    double min_gap = 0.0;
    std::optional<std::size_t> worst_trial;
    Witness worst_witness;
};

struct SharpnessSummary {
    std::string bound_id;
    std::size_t starts = 0;
    std::size_t steps = 0;
    std::size_t evaluations = 0;
    double best_relative_slack = 0.0;
    std::optional<BoundReport> best_report;
    Witness witness;
};

struct SuiteReport {
    std::string command;
    RunConfig config;
    std::vector<BoundAggregate> bounds;
    std::optional<CompareSummary> compare;
    std::optional<SharpnessSummary> sharpness;
    std::vector<BoundReport> reports;  ///< eval only
    double wall_seconds = 0.0;

    /// 0 when nothing applicable failed, 1 otherwise.
    int exit_code() const noexcept;
};

SuiteReport cmd_verify(const RunConfig& cfg);
/// Throws IncomparableBounds unless both are upper bounds on the same quantity.
SuiteReport cmd_compare(const RunConfig& cfg, const BoundSelector& tighter, const BoundSelector& looser);

struct SharpnessOptions {
    std::size_t starts = 64;
    std::size_t steps = 500;
    double initial_step = 0.25;
    double stop_at = 1e-12;
};
SuiteReport cmd_sharpness(const RunConfig& cfg, const BoundSelector& bound, const SharpnessOptions& opt = {});

/// Pair bounds use T = t_matrix, or S* when absent (so the block matrix is
/// [[O, S], [S, O]]). Lemmas use A = S, B = T and x = y = the normalized
/// all-ones vector.
SuiteReport cmd_eval(const ComplexMatrix& s, const std::optional<ComplexMatrix>& t,
                     const std::vector<BoundSelector>& bounds, const EvalSettings& settings = {});

nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json to_json(const SuiteReport& report, bool include_wall_time = true);
/// Long format: scope,field,value with %.17g numbers.
std::string to_csv(const SuiteReport& report);
/// Renders in cfg.format to cfg.output_path or stdout. Throws IOFailure.
void write_report(const SuiteReport& report);

/// Worker count: `requested` if nonzero, then RADIUSLAB_THREADS, then the
/// hardware, never more than `jobs`.
unsigned worker_count(unsigned requested, std::size_t jobs);

}  // namespace radiuslab
