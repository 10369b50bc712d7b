// Randomized structural checks: homogeneity, orderings between bounds,
// equality cases for normal matrices and ensemble class fidelity.
#include <cmath>

#include "doctest.h"
#include "radiuslab/catalog.hpp"
#include "test_support.hpp"

using namespace radiuslab;

TEST_SUITE("properties") {

TEST_CASE("every bound is homogeneous of its catalog degree") {
    const double c = 2.75;
    for (const auto& info : bound_catalog()) {
        if (info.arity == BoundArity::Lemma) continue;
        BoundSelector sel{std::string(info.id), {}, {}};
        // With f = t^a the right side mixes degrees 4a and 4(1-a); only a = 1/2 scales exactly.
        if (info.id == "fg_general" || info.id == "power_mean") sel.param = 0.5;
        const double deg = selector_degree(sel);
        const auto kind = info.gated ? EnsembleKind::AccretiveDissipative : EnsembleKind::Ginibre;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const ComplexMatrix s = testing::draw(kind, 3, seed);
            const ComplexMatrix t = testing::draw(kind, 3, 100 + seed);
            BoundReport a, b;
            if (info.arity == BoundArity::Single) {
                a = evaluate_single(sel, Operand(s));
                b = evaluate_single(sel, Operand(c * s));
            } else {
                a = evaluate_pair(sel, OperandPair(Operand(s), Operand(t)));
                b = evaluate_pair(sel, OperandPair(Operand(c * s), Operand(c * t)));
            }
            const double f = std::pow(c, deg);
            CAPTURE(info.id);
            CHECK(std::abs(b.lhs - f * a.lhs) <= 1e-9 * f * a.scale);
            CHECK(std::abs(b.rhs - f * a.rhs) <= 1e-9 * f * a.scale);
            CHECK(b.scale == doctest::Approx(f * a.scale).epsilon(1e-12));
        }
    }
}

TEST_CASE("holds is scale invariant for non-homogeneous parameters") {
    for (const char* text : {"power_mean@0", "power_mean@0.25", "fg_general@0.75", "fg_general@rational"}) {
        const auto sel = parse_bound_selector(text);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const ComplexMatrix s = testing::ginibre(4, seed);
            for (double c : {1e-3, 1.0, 1e3}) {
                CAPTURE(text);
                CHECK(evaluate_single(sel, Operand(c * s)).holds);
            }
        }
    }
}

TEST_CASE("upper bounds on omega are ordered") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Operand s(testing::ginibre(2 + seed % 7, 3000 + seed));
        const double tol = 1e-10 * s.norm();
        const double cor = bound_cor10(s).rhs;
        const double bp = bound_bp(s).rhs;
        const double kit = bound_kittaneh(s).rhs;
        CHECK(s.omega() <= cor + tol);
        CHECK(cor <= bp + tol);
        CHECK(bp <= kit + tol);
        CHECK(kit <= s.norm() + tol);
        // omega(|S||S*|) <= || |S||S*| || = ||S^2|| <= ||S*S + SS*|| / 2.
        const double gram = bound_heydarbeygi(s).details.at("gram_sum_norm");
        CHECK(bound_heydarbeygi(s).rhs <= 0.5 * gram + tol * s.norm());
        CHECK(bound_power_mean(s, 0.5).rhs <= bound_heydarbeygi(s).rhs + tol * s.norm());
    }
}

TEST_CASE("normal matrices attain the power-mean and eq16 bounds") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Operand s(testing::draw(EnsembleKind::Normal, 2 + seed % 6, seed));
        const double n2 = s.norm() * s.norm();
        CHECK(std::abs(s.omega() - s.norm()) <= 1e-8 * s.norm());
        CHECK(bound_power_mean(s, 0.5).slack <= 1e-6 * n2);
        CHECK(bound_eq16(s).slack <= 1e-6 * n2);
        CHECK(bound_power_mean(s, 0.5).holds);
        CHECK(bound_eq16(s).holds);
    }
}

TEST_CASE("ensemble class fidelity over ten thousand draws") {
    std::size_t draws = 0, bad = 0;
    for (auto kind : all_ensemble_kinds()) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const ComplexMatrix m = testing::draw(kind, 1 + seed % 6, derive_seed(7, 0, seed), 0.5 + seed % 3);
            ++draws;
            if (!satisfies_kind(kind, classify(m, 1e-9))) ++bad;
        }
    }
    CHECK(draws >= 10000);
    CHECK(bad == 0);
}

TEST_CASE("accretive matrices satisfy the Cartesian norm bound") {
    for (auto kind : {EnsembleKind::Accretive, EnsembleKind::Dissipative}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto r = bound_thm8(Operand(testing::draw(kind, 2 + seed % 6, seed)));
            REQUIRE(r.applicable);
            CHECK(r.details.at("norm_squared") <= r.details.at("cartesian_bound") * (1.0 + 1e-10));
            CHECK(r.holds);
        }
    }
}

TEST_CASE("weighted radius lies between omega and the Schatten norm") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ComplexMatrix s = testing::ginibre(4, seed);
        for (double p : {1.0, 2.0, 4.0}) {
            const double w = weighted_numerical_radius(s, p);
            CHECK(w >= numerical_radius(s) * (1.0 - 1e-10));
            CHECK(w <= schatten_norm(s, p) * (1.0 + 1e-10));
        }
    }
}

}
