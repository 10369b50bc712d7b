#include "radiuslab/ensembles.hpp"

#include <cmath>
#include <numbers>

#include "radiuslab/rng.hpp"

namespace radiuslab {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

namespace {

struct KindName {
    EnsembleKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {EnsembleKind::Ginibre, "ginibre"},
    {EnsembleKind::Hermitian, "hermitian"},
    {EnsembleKind::Psd, "psd"},
    {EnsembleKind::Unitary, "unitary"},
    {EnsembleKind::Normal, "normal"},
    {EnsembleKind::Accretive, "accretive"},
    {EnsembleKind::Dissipative, "dissipative"},
    {EnsembleKind::AccretiveDissipative, "accretive_dissipative"},
    {EnsembleKind::NilpotentJordan, "nilpotent_jordan"},
    {EnsembleKind::Diagonal, "diagonal"},
};

ComplexMatrix ginibre(std::size_t n, Rng& rng) {
    ComplexMatrix g(n, n);
    for (auto& z : g.entries()) z = rng.complex_normal();
    return g;
}

ComplexMatrix hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix g = ginibre(n, rng);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    detail::hermitize(h);
    return h;
}

ComplexMatrix psd(std::size_t n, Rng& rng) {
    const ComplexMatrix g = ginibre(n, rng);
    ComplexMatrix p = adjoint_times(g, g) * (1.0 / static_cast<double>(n));
    detail::hermitize(p);
    return p;
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

std::string_view to_string(EnsembleKind kind) noexcept {
    for (const auto& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    return "unknown";
}

std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) {
    for (const auto& kn : kKindNames)
        if (kn.name == name) return kn.kind;
    return std::nullopt;
}

const std::vector<EnsembleKind>& all_ensemble_kinds() {
    static const std::vector<EnsembleKind> kinds = [] {
        std::vector<EnsembleKind> k;
        for (const auto& kn : kKindNames) k.push_back(kn.kind);
        return k;
    }();
    return kinds;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix q = ginibre(n, rng);
    // Modified Gram-Schmidt, applied twice for orthogonality at roundoff.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
            }
            double len = 0.0;
            for (std::size_t i = 0; i < n; ++i) len += std::norm(q(i, j));
            len = std::sqrt(len);
            for (std::size_t i = 0; i < n; ++i) q(i, j) /= len;
        }
    }
    return q;
}

ComplexMatrix sample(const EnsembleSpec& spec) {
    if (spec.dim == 0) throw Error(ErrorCode::BadSpec, "ensemble dimension must be >= 1");
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
        throw Error(ErrorCode::BadSpec, "ensemble scale must be finite and > 0");
    }
    const std::size_t n = spec.dim;
    Rng rng(spec.seed);
    ComplexMatrix m(n, n);
    switch (spec.kind) {
    case EnsembleKind::Ginibre: m = ginibre(n, rng); break;
    case EnsembleKind::Hermitian: m = hermitian(n, rng); break;
    case EnsembleKind::Psd: m = psd(n, rng); break;
    case EnsembleKind::Unitary: m = haar_unitary(n, rng); break;
    case EnsembleKind::Normal: {
        const ComplexMatrix u = haar_unitary(n, rng);
        std::vector<Complex> d(n);
        for (auto& z : d) z = rng.complex_normal();
        m = u * ComplexMatrix::diagonal(std::span<const Complex>(d)) * u.adjoint();
        break;
    }
    case EnsembleKind::Accretive: {
        const ComplexMatrix p = psd(n, rng);
        const ComplexMatrix h = hermitian(n, rng);
        m = p + kI * h;
        break;
    }
    case EnsembleKind::Dissipative: {
        const ComplexMatrix h = hermitian(n, rng);
        const ComplexMatrix p = psd(n, rng);
        m = h + kI * p;
        break;
    }
    case EnsembleKind::AccretiveDissipative: {
        const ComplexMatrix p = psd(n, rng);
        const ComplexMatrix q = psd(n, rng);
        m = p + kI * q;
        break;
    }
    case EnsembleKind::NilpotentJordan:
        for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
        break;
    case EnsembleKind::Diagonal:
        for (std::size_t i = 0; i < n; ++i) m(i, i) = rng.complex_normal();
        break;
    }
    if (spec.scale != 1.0) m *= spec.scale;
    return m;
}

bool satisfies_kind(EnsembleKind kind, const MatrixClassification& c) {
    switch (kind) {
    case EnsembleKind::Ginibre:
    case EnsembleKind::NilpotentJordan: return true;
    case EnsembleKind::Hermitian: return c.is_hermitian;
    case EnsembleKind::Psd: return c.is_psd;
    case EnsembleKind::Unitary:
    case EnsembleKind::Normal:
    case EnsembleKind::Diagonal: return c.is_normal;
    case EnsembleKind::Accretive: return c.is_accretive;
    case EnsembleKind::Dissipative: return c.is_dissipative;
    case EnsembleKind::AccretiveDissipative: return c.is_accretive_dissipative();
    }
    return false;
}

std::vector<std::pair<std::string, ComplexMatrix>> canonical_suite() {
    return {
        {"zero", ComplexMatrix::zero(2)},
        {"identity", ComplexMatrix::identity(2)},
        {"jordan2", ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}},
        {"shear", ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}},
        {"diag_1_i", ComplexMatrix{{1.0, 0.0}, {0.0, kI}}},
        {"identity_plus_i", ComplexMatrix{{1.0 + kI, 0.0}, {0.0, 1.0 + kI}}},
        {"swap", ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}},
        {"jordan3", ComplexMatrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}}},
    };
}

}  // namespace radiuslab
