#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "radiuslab/ensembles.hpp"
#include "radiuslab/linalg.hpp"
#include "radiuslab/matrix.hpp"
#include "radiuslab/rng.hpp"

namespace testing {

using radiuslab::Complex;
using radiuslab::ComplexMatrix;

inline constexpr Complex kI{0.0, 1.0};

inline ComplexMatrix draw(radiuslab::EnsembleKind kind, std::size_t n, std::uint64_t seed, double scale = 1.0) {
    return radiuslab::sample(radiuslab::EnsembleSpec{kind, n, scale, seed});
}

inline ComplexMatrix ginibre(std::size_t n, std::uint64_t seed) {
    return draw(radiuslab::EnsembleKind::Ginibre, n, seed);
}

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Eigenvalues of [[a, b], [conj b, d]] by the quadratic formula, ascending.
inline std::pair<double, double> hermitian2x2_eigs(double a, Complex b, double d) {
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    return {mid - rad, mid + rad};
}

/// Eigenvalues of a 2x2 complex matrix from its characteristic polynomial.
inline std::pair<Complex, Complex> eigs2x2(const ComplexMatrix& s) {
    const Complex tr = s(0, 0) + s(1, 1);
    const Complex det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

/// omega of a 2x2 matrix from the elliptical range theorem: the numerical
/// range is the ellipse with foci at the eigenvalues and minor axis
/// sqrt(tr(S*S) - |l1|^2 - |l2|^2). Maximizes |z| over a dense boundary
/// parametrization, then polishes by ternary search.
inline double omega_2x2_ellipse(const ComplexMatrix& s) {
    const auto [l1, l2] = eigs2x2(s);
    double fro2 = 0.0;
    for (const auto& z : s.entries()) fro2 += std::norm(z);
    const double minor2 = std::max(fro2 - std::norm(l1) - std::norm(l2), 0.0);
    const double b = 0.5 * std::sqrt(minor2);
    const double focal = 0.5 * std::abs(l1 - l2);
    const double a = std::sqrt(b * b + focal * focal);
    const Complex c = 0.5 * (l1 + l2);
    const Complex rot = focal > 0.0 ? (l1 - l2) / std::abs(l1 - l2) : Complex(1.0);
    const auto f = [&](double t) { return std::abs(c + rot * Complex(a * std::cos(t), b * std::sin(t))); };
    const int n = 20000;
    double best = 0.0, best_t = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n;
        if (const double v = f(t); v > best) best = v, best_t = t;
    }
    double lo = best_t - 2.0 * std::numbers::pi / n, hi = best_t + 2.0 * std::numbers::pi / n;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) lo = m1;
        else hi = m2;
    }
    return std::max(best, f(0.5 * (lo + hi)));
}

/// Dominant eigenvalue of the (generally non-Hermitian) product AB by power
/// iteration; AB has nonnegative spectrum for PSD A, B.
inline double power_iteration_radius(const ComplexMatrix& a, const ComplexMatrix& b, int iters = 20000) {
    const ComplexMatrix m = a * b;
    const std::size_t n = m.rows();
    std::vector<Complex> x(n);
    radiuslab::Rng rng(12345);
    for (auto& z : x) z = rng.complex_normal();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        auto y = radiuslab::apply(m, x);
        const double len = radiuslab::vector_norm(y);
        if (len == 0.0) return 0.0;
        // Rayleigh-like estimate <My, x>/<x, x> for the current x.
        lambda = len / radiuslab::vector_norm(x);
        for (auto& z : y) z /= len;
        x = std::move(y);
    }
    return lambda;
}

/// sup over unit x of |<Sx, x>| by brute-force enumeration on a grid of the
/// unit sphere in C^2 (x = (cos a, e^{ib} sin a)); up to global phase this
/// covers the sphere.
inline double omega_2x2_sphere(const ComplexMatrix& s, int na = 600, int nb = 1200) {
    double best = 0.0;
    for (int i = 0; i <= na; ++i) {
        const double a = 0.5 * std::numbers::pi * i / na;
        for (int j = 0; j < nb; ++j) {
            const double bb = 2.0 * std::numbers::pi * j / nb;
            const std::vector<Complex> x = {std::cos(a), std::polar(std::sin(a), bb)};
            best = std::max(best, std::abs(radiuslab::form(s, x, x)));
        }
    }
    return best;
}

inline std::vector<Complex> unit_vector(std::size_t n, std::size_t k) {
    std::vector<Complex> e(n, 0.0);
    e[k] = 1.0;
    return e;
}

}  // namespace testing
