#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "radiuslab/bounds.hpp"

namespace radiuslab {

/// Inputs for check_lemma. Which fields matter depends on the lemma:
/// k1, lem2, lem3, lem14, lem17, as_ineq, pomoc use (a, b); lem22 uses
/// (a, b, param = p); lem27 uses (a, x, y, f, g); lem28 uses (a, x, param = r);
/// eq21 uses a alone.
struct LemmaInputs {
    std::optional<ComplexMatrix> a;
    std::optional<ComplexMatrix> b;
    std::vector<Complex> x;
    std::vector<Complex> y;
    std::optional<double> param;
    ScalarMap f;  ///< defaults to sqrt
    ScalarMap g;
};

const std::vector<std::string_view>& lemma_ids();
bool is_lemma_id(std::string_view id) noexcept;

/// Hypotheses are gated (applicable = false), not thrown. lem3 and pomoc are
/// identities: slack = -|rhs - lhs|. Throws UnknownLemma, and BadSpec when an
/// input the lemma needs is missing.
BoundReport check_lemma(std::string_view id, const LemmaInputs& in, const EvalSettings& settings = {});

/// Random inputs from the lemma's hypothesis class. `variant` selects
/// "normal" pairs for lem2; `param` sets p (lem22), r (lem28, as_ineq) or the
/// exponent a of f = t^a, g = t^{1-a} (lem27).
LemmaInputs sample_lemma_inputs(std::string_view id, std::size_t dim, std::uint64_t seed,
                                std::string_view variant = {}, std::optional<double> param = {});

}  // namespace radiuslab
