#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "radiuslab/radius.hpp"
#include "test_support.hpp"

using namespace radiuslab;
using testing::kI;

TEST_SUITE("radius") {

TEST_CASE("2x2 omega agrees with the elliptical range") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const ComplexMatrix s = testing::ginibre(2, 1000 + seed);
        const double ellipse = testing::omega_2x2_ellipse(s);
        CHECK(numerical_radius(s) == doctest::Approx(ellipse).epsilon(1e-9));
    }
}

TEST_CASE("2x2 omega agrees with brute force over the sphere") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const ComplexMatrix s = testing::ginibre(2, 77 + seed);
        const double w = numerical_radius(s);
        const double brute = testing::omega_2x2_sphere(s);
        CHECK(brute <= w * (1.0 + 1e-12));
        CHECK(brute >= w * (1.0 - 1e-4));
    }
}

TEST_CASE("sweep and ascent oracle agree on larger matrices") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix s = testing::ginibre(6, 500 + seed);
        const double w = numerical_radius(s);
        const double o = numerical_radius_oracle(s, 32, seed);
        CHECK(std::abs(w - o) <= 1e-6 * operator_norm(s));
    }
}

TEST_CASE("closed-form radii") {
    CHECK(numerical_radius(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(numerical_radius(ComplexMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerical_radius(ComplexMatrix{{1.0, 0.0}, {0.0, kI}}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerical_radius(ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(numerical_radius(ComplexMatrix::zero(3)) == 0.0);
}

TEST_CASE("rotation and unitary invariance") {
    const ComplexMatrix s = testing::ginibre(5, 42);
    const double w = numerical_radius(s);
    CHECK(numerical_radius(std::polar(1.0, 0.7) * s) == doctest::Approx(w).epsilon(1e-10));
    Rng rng(3);
    const ComplexMatrix u = haar_unitary(5, rng);
    CHECK(numerical_radius(u * s * u.adjoint()) == doctest::Approx(w).epsilon(1e-10));
    CHECK(numerical_radius(s.adjoint()) == doctest::Approx(w).epsilon(1e-10));
}

TEST_CASE("off-diagonal radius") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexMatrix s = testing::ginibre(3, seed), t = testing::ginibre(3, 50 + seed);
        const double direct = numerical_radius(off_diag_embed(s, t));
        CHECK(off_diag_numerical_radius(s, t) == doctest::Approx(direct).epsilon(1e-9));
    }
    const ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(off_diag_numerical_radius(id, id) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix s = testing::ginibre(4, 9);
    CHECK(off_diag_numerical_radius(s, ComplexMatrix::zero(4)) == doctest::Approx(operator_norm(s) / 2).epsilon(1e-12));
    CHECK(off_diag_numerical_radius(s, s.adjoint()) == doctest::Approx(numerical_radius(s)).epsilon(1e-9));
    CHECK_THROWS_AS(off_diag_numerical_radius(s, ComplexMatrix::identity(3)), Error);
}

TEST_CASE("weighted radius") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(weighted_numerical_radius(ComplexMatrix::identity(3), 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(weighted_numerical_radius(ComplexMatrix::identity(4), 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    const ComplexMatrix d{{1.0, 0.0}, {0.0, -1.0}};
    CHECK(weighted_numerical_radius(d, 2.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    const ComplexMatrix s = testing::ginibre(4, 17);
    CHECK(weighted_numerical_radius(s, inf) == doctest::Approx(numerical_radius(s)).epsilon(1e-10));
    // Monotone in p.
    CHECK(weighted_numerical_radius(s, 1.0) >= weighted_numerical_radius(s, 2.0));
    CHECK(weighted_numerical_radius(s, 2.0) >= weighted_numerical_radius(s, inf));
}

TEST_CASE("sweep config validation") {
    SweepConfig bad;
    bad.coarse_grid = 4;
    CHECK_THROWS_AS(bad.validate(), Error);
    SweepConfig fine;
    fine.coarse_grid = 64;
    const ComplexMatrix s = testing::ginibre(3, 4);
    CHECK(numerical_radius(s, fine) == doctest::Approx(numerical_radius(s)).epsilon(1e-8));
}

}
