#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"

using namespace radiuslab;
using testing::kI;

TEST_SUITE("linalg") {

TEST_CASE("2x2 Hermitian eigenvalues match the quadratic formula") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const double a = rng.normal(), d = rng.normal();
        const Complex b = rng.complex_normal();
        const ComplexMatrix h{{a, b}, {std::conj(b), d}};
        const auto [lo, hi] = testing::hermitian2x2_eigs(a, b, d);
        const auto ev = hermitian_eigenvalues(h);
        CHECK(ev[0] == doctest::Approx(lo).epsilon(1e-12).scale(1.0));
        CHECK(ev[1] == doctest::Approx(hi).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("eigenvectors reconstruct the matrix") {
    const ComplexMatrix g = testing::ginibre(7, 3);
    ComplexMatrix h = g + g.adjoint();
    const auto e = hermitian_eigen(h);
    const ComplexMatrix rebuilt = e.vectors * ComplexMatrix::diagonal(std::span<const double>(e.eigenvalues)) *
                                  e.vectors.adjoint();
    CHECK(testing::max_entry_diff(rebuilt, h) < 1e-12 * h.max_abs() * 10);
    CHECK(testing::max_entry_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(7)) < 1e-12);
}

TEST_CASE("non-Hermitian input is rejected") {
    try {
        hermitian_eigen(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("|S| squared is S*S") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix s = testing::ginibre(2 + seed % 5, seed);
        const ComplexMatrix a = matrix_abs(s);
        CHECK(testing::max_entry_diff(a * a, s.adjoint() * s) < 1e-11 * std::max(1.0, (s.adjoint() * s).max_abs()));
        CHECK(classify(a, 1e-9).is_psd);
    }
}

TEST_CASE("psd_power agrees with repeated products") {
    const ComplexMatrix p = testing::draw(EnsembleKind::Psd, 5, 8);
    CHECK(testing::max_entry_diff(psd_power(p, 2.0), p * p) < 1e-11 * (p * p).max_abs());
    CHECK(testing::max_entry_diff(psd_power(p, 3.0), p * p * p) < 1e-10 * (p * p * p).max_abs());
    const ComplexMatrix r = psd_power(p, 0.5);
    CHECK(testing::max_entry_diff(r * r, p) < 1e-11 * p.max_abs());
    CHECK(testing::max_entry_diff(psd_power(p, 0.0), ComplexMatrix::identity(5)) < 1e-12);
    try {
        psd_power(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}, 0.5);
        FAIL("expected NotPSD");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPSD);
    }
}

TEST_CASE("r(AB) agrees with power iteration") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const ComplexMatrix a = testing::draw(EnsembleKind::Psd, 4, 100 + seed);
        const ComplexMatrix b = testing::draw(EnsembleKind::Psd, 4, 200 + seed);
        const double oracle = testing::power_iteration_radius(a, b);
        CHECK(spectral_radius_psd_product(a, b) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("singular values and Schatten norms") {
    const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<Complex>{3.0, -4.0 * kI});
    const auto sv = singular_values(d);
    CHECK(sv[0] == doctest::Approx(4.0));
    CHECK(sv[1] == doctest::Approx(3.0));
    CHECK(schatten_norm(d, 1.0) == doctest::Approx(7.0));
    CHECK(schatten_norm(d, 2.0) == doctest::Approx(5.0));
    CHECK(schatten_norm(d, std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
    CHECK_THROWS_AS(schatten_norm(d, 0.5), Error);

    // Frobenius is Schatten-2; unitary invariance.
    const ComplexMatrix g = testing::ginibre(6, 21);
    CHECK(schatten_norm(g, 2.0) == doctest::Approx(g.frobenius_norm()).epsilon(1e-12));
    Rng rng(5);
    const ComplexMatrix u = haar_unitary(6, rng), v = haar_unitary(6, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        CHECK(schatten_norm(u * g * v, p) == doctest::Approx(schatten_norm(g, p)).epsilon(1e-11));
    }
    CHECK(operator_norm(u * g * v) == doctest::Approx(operator_norm(g)).epsilon(1e-11));
}

TEST_CASE("operator norm of the shear") {
    const ComplexMatrix shear{{1.0, 2.0}, {0.0, 1.0}};
    CHECK(operator_norm(shear) == doctest::Approx(1.0 + std::numbers::sqrt2).epsilon(1e-14));
    // Jordan block: singular values 1 and 0.
    const auto sv = singular_values(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    CHECK(sv[0] == doctest::Approx(1.0));
    CHECK(std::abs(sv[1]) < 1e-14);
}

TEST_CASE("Cartesian parts of the shear") {
    const auto p = cartesian_decomposition(ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}});
    CHECK(p.real == ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}});
    CHECK(testing::max_entry_diff(p.imag, ComplexMatrix{{0.0, -kI}, {kI, 0.0}}) < 1e-15);
}

TEST_CASE("classification") {
    const auto id = classify(ComplexMatrix::identity(3), 1e-9);
    CHECK((id.is_hermitian && id.is_normal && id.is_psd && id.is_accretive) == true);
    CHECK(id.is_dissipative);  // Im I = 0 is positive semidefinite
    const auto ipi = classify(ComplexMatrix{{1.0 + kI, 0.0}, {0.0, 1.0 + kI}}, 1e-9);
    CHECK(ipi.is_accretive_dissipative());
    CHECK(ipi.is_normal);
    CHECK_FALSE(ipi.is_hermitian);
    const auto jordan = classify(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-9);
    CHECK_FALSE(jordan.is_normal);
    CHECK_FALSE(jordan.is_accretive);
    const auto neg = classify(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}, 1e-9);
    CHECK(neg.is_hermitian);
    CHECK_FALSE(neg.is_psd);
}

TEST_CASE("off-diagonal embedding") {
    const ComplexMatrix s = testing::ginibre(3, 1), t = testing::ginibre(3, 2);
    const ComplexMatrix e = off_diag_embed(s, t);
    CHECK(e.rows() == 6);
    CHECK(e(0, 3) == s(0, 0));
    CHECK(e(3, 1) == std::conj(t(1, 0)));
    CHECK(e(0, 0) == Complex(0.0));
    CHECK(operator_norm(e) == doctest::Approx(std::max(operator_norm(s), operator_norm(t))).epsilon(1e-12));
}

}
