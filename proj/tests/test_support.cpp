// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/fixtures.hpp>
#include <suppdiff/support.hpp>

#include "test_oracles.hpp"

#include <doctest.h>

using namespace suppdiff;

namespace {
Vector v2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}
Vector v3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

// frozen from the dense-grid oracle below (step 1e-3 over [0,5]^2):
// endpoints of the minimizer segment of x1+x2 over {x1 x2 >= 1, x1+x2 >= 5/2},
// analytic check x(5/2 - x) = 1 at x in {1/2, 2}
const double kSegmentDiameter = 2.1213203435596424; // 1.5 * sqrt(2)
} // namespace

TEST_CASE("support values against the printed closed forms") {
    SupportEval e1 = support_value(set_fixture("ex2-A3"), v2(-1, -1));
    CHECK(e1.status == SupportStatus::Finite);
    CHECK(e1.value == doctest::Approx(-2.0).epsilon(1e-12));

    SupportEval e2 = support_value(set_fixture("ex3a"), v2(-1, -1));
    CHECK(e2.value == doctest::Approx(-3.0).epsilon(1e-12));

    SupportEval e3 = support_value(set_fixture("ex3b"), v2(-2, -1));
    CHECK(e3.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("positive functionals blow up on translation-stable sets") {
    for (const char* name : {"ex3a", "ex3b", "d4", "hyperbola-set"}) {
        HSet A = set_fixture(name);
        Vector ones = Vector::Ones(A.dim());
        SupportEval e = support_value(A, ones);
        CHECK(e.status == SupportStatus::PlusInfinity);
        CHECK(std::isinf(e.value));
    }
}

TEST_CASE("numeric path reproduces the ex3b closed form") {
    HSet A = set_fixture("ex3b");
    SupportOptions opts;
    opts.use_oracle = false;
    for (auto xs : {v2(-2, -1), v2(-0.5, -3), v2(-1, -1)}) {
        SupportEval e = support_value(A, xs, opts);
        CHECK(e.value == doctest::Approx(std::max(xs[0], xs[1])).epsilon(1e-7));
        REQUIRE(e.maximizer_hint);
        CHECK(A.member(*e.maximizer_hint));
    }
}

TEST_CASE("argmax of a vertex set is the vertex") {
    HSet A = set_fixture("ex3a"); // orthant shifted by (1,2)
    ArgmaxSet am = argmax_set(A, v2(-1, -1));
    CHECK(am.is_singleton);
    CHECK_FALSE(am.truncated);
    REQUIRE(am.representatives.size() == 1);
    CHECK((am.representatives[0] - v2(1, 2)).norm() < 1e-5);
}

TEST_CASE("nonconvex vertex example: unique maximizer at the origin") {
    HSet A = set_fixture("ex1");
    ArgmaxSet am = argmax_set(A, v2(-1, -1)); // boundary of the domain
    CHECK(am.is_singleton);
    REQUIRE(!am.representatives.empty());
    CHECK(am.representatives[0].norm() < 1e-5);
}

TEST_CASE("segment argmax is measured against the grid oracle") {
    HSet L = set_fixture("adsz-L52");
    ArgmaxSet am = argmax_set(L, v2(-1, -1));
    CHECK_FALSE(am.is_singleton);
    CHECK(am.sigma == doctest::Approx(-2.5).epsilon(1e-7));

    // independent dense-grid oracle
    auto brute = oracle::brute_max_2d(L.member, v2(-1, -1), 0.0, 5.0, 1e-3, 2e-3);
    CHECK(brute.value == doctest::Approx(-2.5).epsilon(1e-6));
    double oracle_diam = oracle::diameter(brute.near_argmax);
    CHECK(oracle_diam == doctest::Approx(kSegmentDiameter).epsilon(5e-3));
    CHECK(am.diameter == doctest::Approx(kSegmentDiameter).epsilon(1e-2));

    // representatives reach both analytic endpoints
    bool lo = false, hi = false;
    for (const auto& r : am.representatives) {
        if ((r - v2(0.5, 2.0)).norm() < 1e-2) lo = true;
        if ((r - v2(2.0, 0.5)).norm() < 1e-2) hi = true;
    }
    CHECK(lo);
    CHECK(hi);
}

TEST_CASE("subdifferential sentinel at the origin") {
    ArgmaxSet s = subdifferential(set_fixture("d4"), Vector::Zero(3));
    CHECK(s.whole_hull);
}

TEST_CASE("differentiability verdicts") {
    // translate of a cone: differentiable everywhere in the domain interior
    DifferentiabilityResult r1 =
        is_differentiable_at(set_fixture("ex3a"), v2(-0.3, -2.0));
    CHECK(r1.verdict == DiffVerdict::Differentiable);
    REQUIRE(r1.gradient);
    CHECK((*r1.gradient - v2(1, 2)).norm() < 1e-5);

    // max-form support function has a kink on the diagonal
    DifferentiabilityResult r2 = is_differentiable_at(set_fixture("ex3b"), v2(-1, -1));
    CHECK(r2.verdict == DiffVerdict::NotDifferentiable);
    CHECK(r2.argmax.diameter == doctest::Approx(std::sqrt(2.0)).epsilon(1e-2));
    DifferentiabilityResult r3 = is_differentiable_at(set_fixture("ex3b"), v2(-2, -1));
    CHECK(r3.verdict == DiffVerdict::Differentiable);
    REQUIRE(r3.gradient);
    CHECK((*r3.gradient - v2(0, 1)).norm() < 1e-5);

    // d4 is smooth on the interior of the dual domain
    DifferentiabilityResult r4 = is_differentiable_at(set_fixture("d4"), v3(-1, -1, -1));
    CHECK(r4.verdict == DiffVerdict::Differentiable);
    REQUIRE(r4.gradient);
    CHECK((*r4.gradient - v3(0, 0, 0.25)).norm() < 1e-4);

    // usc level set: kink at the uniform price
    DifferentiabilityResult r5 =
        is_differentiable_at(set_fixture("adsz-L52"), v2(-1, -1));
    CHECK(r5.verdict == DiffVerdict::NotDifferentiable);
}

TEST_CASE("finite differences match the argmax certificate") {
    // sigma is linear near the vertex functional
    Vector g1 = gradient_fd(set_fixture("ex3a"), v2(-1, -1), 1e-5);
    CHECK((g1 - v2(1, 2)).norm() < 1e-6);

    // symbolic gradient of -2 sqrt(uv) at (-1,-1) is (1,1)
    Vector g2 = gradient_fd(set_fixture("ex2-A3"), v2(-1, -1), 1e-5);
    CHECK((g2 - v2(1, 1)).norm() < 1e-6);

    // d4: certificate against central differences of the numeric support
    DifferentiabilityResult r = is_differentiable_at(set_fixture("d4"), v3(-1, -1, -1));
    REQUIRE(r.gradient);
    Vector g3 = gradient_fd(set_fixture("d4"), v3(-1, -1, -1), 1e-5);
    CHECK((g3 - *r.gradient).norm() < 1e-4);

    CHECK_THROWS(gradient_fd(set_fixture("ex3a"), v2(-1e-6, -1), 1e-5));
}

TEST_CASE("homogeneity and subadditivity of the support function") {
    HSet A = set_fixture("hyperbola-set");
    Rng rng(53);
    SupportOptions opts;
    for (int i = 0; i < 40; ++i) {
        Vector xs = -v2(0.2 + 2.0 * rng.uniform(), 0.2 + 2.0 * rng.uniform());
        double t = 0.1 + 9.9 * rng.uniform();
        double s1 = support_value(A, xs, opts).value;
        double st = support_value(A, (t * xs).eval(), opts).value;
        CHECK(st == doctest::Approx(t * s1).epsilon(1e-8));

        Vector ys = -v2(0.2 + 2.0 * rng.uniform(), 0.2 + 2.0 * rng.uniform());
        double s2 = support_value(A, ys, opts).value;
        double s12 = support_value(A, (xs + ys).eval(), opts).value;
        CHECK(s12 <= s1 + s2 + 1e-8 * (1.0 + std::abs(s1) + std::abs(s2)));
    }
}

TEST_CASE("hull invariance: set and hull share the support function") {
    SupportOptions numeric;
    numeric.use_oracle = false;
    Rng rng(59);
    HSet A1 = set_fixture("ex2-A1");
    HSet A2 = set_fixture("ex2-A2");
    HSet A3 = set_fixture("ex2-A3");
    HSet A4 = set_fixture("ex2-A4");
    for (int i = 0; i < 12; ++i) {
        Vector u = rng.unit_vector(2) * (0.5 + 2.0 * rng.uniform());
        double oracle_circle = support_value(A1, u).value;
        double numeric_annulus = support_value(A2, u, numeric).value;
        CHECK(numeric_annulus == doctest::Approx(oracle_circle).epsilon(1e-6));

        Vector neg = -v2(0.3 + 2.0 * rng.uniform(), 0.3 + 2.0 * rng.uniform());
        double oracle_curve = support_value(A3, neg).value;
        double numeric_band = support_value(A4, neg, numeric).value;
        CHECK(numeric_band == doctest::Approx(oracle_curve).epsilon(1e-6));
    }
}

TEST_CASE("compactness probe separates domain interior from boundary") {
    HSet A = set_fixture("ex1");
    CHECK(subdifferential_compactness_probe(A, v2(-1, -1)) ==
          CompactnessVerdict::Unbounded);
    CHECK(subdifferential_compactness_probe(A, v2(0, -1)) == CompactnessVerdict::Compact);
    CHECK(subdifferential_compactness_probe(set_fixture("ex3a"), v2(-1, -2)) ==
          CompactnessVerdict::Compact);
}

TEST_CASE("dual grids stay strictly inside the domain") {
    for (const Cone& K : {Cone::orthant(2), Cone::orthant(3), Cone::lorentz(3)}) {
        auto grid = dual_interior_grid(K, 100, 1.0);
        CHECK(static_cast<int>(grid.size()) == 100);
        for (const auto& g : grid) CHECK(K.strict_dual_contains((-g).eval()));
    }
    // the planar grid covers the diagonal, where max-form kinks live
    auto grid2 = dual_interior_grid(Cone::orthant(2), 100, 1.0);
    bool diag = false;
    for (const auto& g : grid2)
        if (g[0] == g[1]) diag = true;
    CHECK(diag);
}
