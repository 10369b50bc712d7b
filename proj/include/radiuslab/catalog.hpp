#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radiuslab/bounds.hpp"
#include "radiuslab/ensembles.hpp"
#include "radiuslab/lemmas.hpp"

namespace radiuslab {

enum class BoundArity { Single, Pair, Lemma };

struct BoundInfo {
    std::string_view id;
    BoundArity arity;
    /// Power of the operand scale carried by lhs and rhs; prop4 uses its r.
    int degree;
    /// What the left side measures, for upper bounds that `compare` may rank
    /// against each other. Empty for lower-bound forms and lemmas.
    std::string_view upper_bound_of;
    bool gated;
    std::string_view param_name;
    std::optional<double> default_param;
    std::string_view default_variant;
    std::string_view summary;
};

const std::vector<BoundInfo>& bound_catalog();
/// Throws UnknownBound.
const BoundInfo& bound_info(std::string_view id);

/// "id", "id@<number>", "id@inf" or "id@<variant>".
struct BoundSelector {
    std::string id;
    std::optional<double> param;
    std::string variant;

    std::string label() const;
    const BoundInfo& info() const { return bound_info(id); }
    /// param, or the catalog default.
    std::optional<double> effective_param() const;
};

/// Throws UnknownBound for an unknown id, BadSpec for a malformed suffix.
BoundSelector parse_bound_selector(std::string_view text);

/// Comma-separated selectors; "all" expands to every catalog id with its
/// defaults.
std::vector<BoundSelector> parse_bound_list(std::string_view text);

/// The homogeneity degree actually in force for this selector.
double selector_degree(const BoundSelector& sel);

/// Key describing the left side, so compare can reject mismatched pairs.
/// Empty when the selector is not an upper bound.
std::string compare_key(const BoundSelector& sel);

BoundReport evaluate_single(const BoundSelector& sel, const Operand& s);
BoundReport evaluate_pair(const BoundSelector& sel, const OperandPair& st);
BoundReport evaluate_lemma(const BoundSelector& sel, const LemmaInputs& in, const EvalSettings& settings);

/// Inputs for a lemma selector from the lemma's hypothesis class.
LemmaInputs sample_for(const BoundSelector& sel, std::size_t dim, std::uint64_t seed);

}  // namespace radiuslab
