#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radiuslab/linalg.hpp"
#include "radiuslab/matrix.hpp"
#include "radiuslab/rng.hpp"

namespace radiuslab {

enum class EnsembleKind {
    Ginibre,
    Hermitian,
    Psd,
    Unitary,
    Normal,
    Accretive,
    Dissipative,
    AccretiveDissipative,
    NilpotentJordan,
    Diagonal,
};

std::string_view to_string(EnsembleKind kind) noexcept;
std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name);
const std::vector<EnsembleKind>& all_ensemble_kinds();

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Ginibre;
    std::size_t dim = 4;
    double scale = 1.0;
    std::uint64_t seed = 0;
};

/// Deterministic for a fixed spec. Throws BadSpec for dim 0 or a
/// non-positive scale.
ComplexMatrix sample(const EnsembleSpec& spec);

/// Whether `c` has the structural property promised by `kind`.
bool satisfies_kind(EnsembleKind kind, const MatrixClassification& c);

/// Regression fixtures: zero, identity, jordan2, shear, diag(1,i), I+iI and a
/// few more.
std::vector<std::pair<std::string, ComplexMatrix>> canonical_suite();

/// Haar unitary from Gram-Schmidt on a Ginibre sample.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

}  // namespace radiuslab
