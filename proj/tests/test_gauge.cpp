// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/fixtures.hpp>
#include <suppdiff/gauge.hpp>

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
} // namespace

TEST_CASE("min-ratio gauge of the shifted orthant") {
    HSet A = set_fixture("leontieff"); // shift (1,2,4)
    CHECK(gauge(A, v3(2, 2, 4)).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gauge(A, v3(1, 2, 4)).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gauge(A, v3(3, 10, 40)).value == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(gauge(A, v3(0, 1, 1)).value == 0.0);
    CHECK_THROWS_AS(gauge(A, v3(-1, 0, 0)), std::invalid_argument);
}

TEST_CASE("shifted Lorentz cone: the printed piecewise gauge") {
    HSet A = set_fixture("ex3c"); // a = (1,0,1) on the boundary ray
    // interior point: quadratic branch
    CHECK(gauge(A, v3(0, 0, 1)).value == doctest::Approx(0.5).epsilon(1e-12));
    // on the shift ray: linear branch
    CHECK(gauge(A, v3(2, 0, 2)).value == doctest::Approx(2.0).epsilon(1e-12));
    // on the cone boundary off the ray: zero within bisection resolution
    // (the floating-point sqrt lands an ulp inside the cone)
    double z = std::sqrt(1.0 + 1e-6);
    CHECK(gauge(A, v3(1.0, 1e-3, z)).value <= 1e-9);

    // bisection agrees without the oracle
    GaugeOptions numeric;
    numeric.use_oracle = false;
    CHECK(gauge(A, v3(0, 0, 1), numeric).value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(gauge(A, v3(1.0, 1e-3, z), numeric).value <= 1e-9);
    CHECK(gauge(A, v3(0.3, -0.2, 2.0), numeric).value ==
          doctest::Approx((*A.gauge_oracle)(v3(0.3, -0.2, 2.0))).epsilon(1e-9));
}

TEST_CASE("gauge positive homogeneity on samples") {
    for (const char* name : {"ex3b", "ex3c", "leontieff", "d4", "hyperbola-set"}) {
        HSet A = set_fixture(name);
        const Cone& K = A.K();
        Rng rng(61);
        for (int i = 0; i < 200; ++i) {
            Vector x = K.sample_point(rng, A.bound_hint);
            double t = rng.uniform(0.01, 10.0);
            double gx = gauge(A, x).value;
            double gtx = gauge(A, (t * x).eval()).value;
            CHECK(std::abs(gtx - t * gx) <= 1e-6 * (1.0 + t) * (1.0 + gx));
        }
    }
}

TEST_CASE("level identity between the gauge and dilation membership") {
    Rng rng(67);
    for (const char* name : {"leontieff", "d4", "ex3b"}) {
        HSet A = set_fixture(name);
        const Cone& K = A.K();
        std::vector<Vector> samples;
        for (int i = 0; i < 1000; ++i) samples.push_back(K.sample_point(rng, A.bound_hint));
        for (double gamma : {0.0, 1.0, 2.0}) {
            auto rep = level_identity_check(A, gamma, samples);
            CHECK(rep.holds);
            CHECK(rep.witnesses.empty());
        }
    }
}

TEST_CASE("monotonicity along the cone order") {
    HSet A = set_fixture("leontieff");
    const Cone& K = A.K();
    Rng rng(71);
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int i = 0; i < 1000; ++i) {
        Vector x = K.sample_point(rng, A.bound_hint);
        Vector k = K.sample_point(rng, 0.5 * A.bound_hint);
        pairs.emplace_back(x, x + k);
    }
    CHECK(monotonicity_check(A, pairs, /*strict=*/false).holds);
}

TEST_CASE("strict monotonicity fails along a tangent boundary move") {
    HSet A = set_fixture("ex3c");
    // k on the cone boundary, not parallel to the shift: the gauge stays flat
    Vector a = v3(1, 0, 1);
    Vector k = v3(0, 0.5, 0.5);
    CHECK((*A.gauge_oracle)(a + k) == doctest::Approx(1.0).epsilon(1e-12));
    auto rep = monotonicity_check(A, {{a, a + k}}, /*strict=*/true);
    CHECK_FALSE(rep.holds);

    // the strict variant holds for the d4 gauge away from zero
    HSet D = set_fixture("d4");
    const Cone& K = D.K();
    Rng rng(73);
    std::vector<std::pair<Vector, Vector>> pairs;
    for (int i = 0; i < 1000; ++i) {
        Vector x = K.sample_point(rng, D.bound_hint);
        Vector kk = K.sample_point(rng, 0.3 * D.bound_hint) +
                    0.01 * D.bound_hint * K.interior_point();
        pairs.emplace_back(x, x + kk);
    }
    CHECK(monotonicity_check(D, pairs, /*strict=*/true).holds);
}

TEST_CASE("continuity probe: jump on the shifted Lorentz ray, none elsewhere") {
    const std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
    HSet C = set_fixture("ex3c");
    auto osc = continuity_probe(C, v3(1, 0, 1), radii, 79, 96);
    for (const auto& [r, o] : osc) CHECK(o >= 0.9);

    HSet L = set_fixture("leontieff");
    auto osc2 = continuity_probe(L, L.witness, radii, 83, 96);
    CHECK(osc2.back().second < 1e-3);

    HSet E = set_fixture("ex3b");
    auto osc4 = continuity_probe(E, E.witness, radii, 87, 96);
    CHECK(osc4.back().second < 1e-3);

    // the d4 gauge is Hoelder-1/2 at the z = 0 face: the oscillation decays
    // like sqrt(r) rather than r, but it does vanish
    HSet D = set_fixture("d4");
    auto osc3 = continuity_probe(D, v3(1, 0, 0), radii, 89, 96);
    CHECK(osc3.back().second < 0.05);
    CHECK(osc3.back().second < 0.2 * osc3.front().second);
}

TEST_CASE("quasiconcavity: plain holds for d4, strict fails on the flat edge") {
    HSet D = set_fixture("d4");
    const Cone& K = D.K();
    Rng rng(97);
    std::vector<std::tuple<Vector, Vector, double>> triples;
    for (int i = 0; i < 1000; ++i) {
        Vector x = K.sample_point(rng, D.bound_hint);
        Vector y = K.sample_point(rng, D.bound_hint);
        triples.emplace_back(x, y, i % 4 == 0 ? 0.5 : rng.uniform());
    }
    CHECK(quasiconcavity_check(D, triples).holds);

    auto strict = quasiconcavity_check(
        D, {{v3(1, 0, 0), v3(0, 1, 0), 0.5}}, StrictDomain::PositiveGauge);
    CHECK_FALSE(strict.holds);
    REQUIRE(strict.witnesses.size() == 1);

    // strictly convex level sets: strict quasiconcavity on the interior
    HSet H = set_fixture("hyperbola-set");
    Rng rng2(101);
    std::vector<std::tuple<Vector, Vector, double>> t2;
    for (int i = 0; i < 1000; ++i) {
        Vector x = H.K().sample_point(rng2, H.bound_hint) + v2(0.2, 0.2);
        Vector y = H.K().sample_point(rng2, H.bound_hint) + v2(0.2, 0.2);
        t2.emplace_back(x, y, i % 4 == 0 ? 0.5 : rng2.uniform());
    }
    CHECK(quasiconcavity_check(H, t2, StrictDomain::InteriorK).holds);
}

TEST_CASE("attainment: the gauge dilate contains its point") {
    for (const char* name : {"ex3b", "leontieff", "d4", "hyperbola-set", "adsz-L52"}) {
        HSet A = set_fixture(name);
        const Cone& K = A.K();
        Rng rng(103);
        for (int i = 0; i < 300; ++i) {
            Vector x = K.sample_point(rng, A.bound_hint);
            double g = gauge(A, x).value;
            if (g <= 1e-9) continue;
            CHECK((A.member(x / g) || A.member(x / (g * (1.0 - 1e-9)))));
        }
    }
}
