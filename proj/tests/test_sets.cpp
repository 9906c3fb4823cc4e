// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/conditions.hpp>
#include <suppdiff/fixtures.hpp>

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

TEST_CASE("shifted cone membership") {
    HSet A = shifted_cone(v2(1, 2), Cone::orthant(2));
    CHECK(A.member(v2(2, 2)));
    CHECK_FALSE(A.member(v2(0, 3))); // first coordinate deficit

    HSet L = shifted_cone(v3(1, 0, 1), Cone::lorentz(3));
    CHECK(L.member(v3(1, 0, 1)));

    CHECK_THROWS_AS(shifted_cone(v2(-1, 2), Cone::orthant(2)), std::invalid_argument);
    CHECK_THROWS_AS(shifted_cone(v2(0, 0), Cone::orthant(2)), std::invalid_argument);
}

TEST_CASE("level sets of production functions") {
    ProductionFn hyp = production_fixture("hyperbola");
    HSet L1 = level_set(hyp, 1.0, v2(1, 1));
    CHECK(L1.member(v2(1, 1)));
    CHECK_FALSE(L1.member(v2(0.5, 1)));

    ProductionFn adsz = production_fixture("ex-adsz");
    HSet L52 = level_set(adsz, 2.5, v2(0.5, 2.0));
    CHECK(L52.member(v2(0.5, 2.0)));    // product 1, sum exactly 5/2
    CHECK_FALSE(L52.member(v2(1, 1))); // arc branch value 1 < 5/2

    CHECK_THROWS_AS(level_set(hyp, 0.0, v2(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(level_set(hyp, 4.0, v2(1, 1)), std::invalid_argument); // witness fails
}

TEST_CASE("ex-adsz branch order and values") {
    ProductionFn F = production_fixture("ex-adsz");
    CHECK(F(v2(1, 1)) == 1.0);            // tie on the arc keeps the low branch
    CHECK(F(v2(0.5, 2.0)) == 2.5);        // seam point owned by the middle branch
    CHECK(F(v2(2.0, 0.5)) == 2.5);
    CHECK(F(v2(0.5, 0.5)) == 0.25);       // plain product branch
    CHECK(F(v2(2, 2)) == doctest::Approx(5.5).epsilon(1e-15));
    // inner branch stays strictly between 1 and 2
    double inner = F(v2(1.0, 1.2));
    CHECK(inner > 1.0);
    CHECK(inner < 2.0);
}

TEST_CASE("fixture catalog basics") {
    CHECK(set_fixture("d4").member(v3(1, 1, 0)));
    CHECK_FALSE(set_fixture("d4").member(v3(0, 0, 0)));
    CHECK(set_fixture("ex1").member(v2(0, 0)));
    CHECK_THROWS_AS(set_fixture("nope"), std::invalid_argument);
    CHECK_THROWS_AS(production_fixture("nope"), std::invalid_argument);
    CHECK(list_fixtures().size() >= 15);
}

TEST_CASE("(H) sampling: translation stability, containment, no origin") {
    for (const char* name : {"ex3a", "ex3b", "ex3c", "leontieff", "d4", "hyperbola-set",
                             "adsz-L52"}) {
        HSet A = set_fixture(name);
        REQUIRE(A.satisfies_h);
        const Cone& K = A.K();
        Rng rng(29);
        auto members = sample_members(A, 200, 31);
        int checked = 0;
        for (int i = 0; i < 1000; ++i) {
            const Vector& a = members[rng.index(members.size())];
            Vector k = K.sample_point(rng, 0.3 * A.bound_hint);
            ++checked;
            CHECK(A.member(a + k));
            CHECK(K.contains(a));
            CHECK(a.norm() > 0.0);
        }
        CHECK(checked == 1000);
    }
}

TEST_CASE("interior translation lands in the relative interior") {
    for (const char* name : {"ex3b", "d4", "hyperbola-set"}) {
        HSet A = set_fixture(name);
        const Cone& K = A.K();
        Rng rng(37);
        auto members = sample_members(A, 100, 41);
        for (int i = 0; i < 50; ++i) {
            const Vector& a = members[rng.index(members.size())];
            Vector k = (0.05 + 0.3 * rng.uniform()) * A.bound_hint *
                       K.sample_interior_direction(rng);
            CHECK(check_interior_rel_K(A, a + k));
        }
    }
}

TEST_CASE("membership agrees with the unit gauge level where both exist") {
    for (const char* name : {"ex3b", "leontieff", "d4", "hyperbola-set"}) {
        HSet A = set_fixture(name);
        REQUIRE(A.gauge_oracle);
        const Cone& K = A.K();
        Rng rng(43);
        for (int i = 0; i < 500; ++i) {
            Vector x = K.sample_point(rng, A.bound_hint);
            double g = (*A.gauge_oracle)(x);
            if (std::abs(g - 1.0) <= 1e-9) continue; // boundary band
            CHECK(A.member(x) == (g >= 1.0));
        }
    }
}

TEST_CASE("bounded catalog entries carry no cone and are flagged") {
    for (const char* name : {"ex1", "ex2-A1", "ex2-A2", "ex2-A3", "ex2-A4"}) {
        HSet A = set_fixture(name);
        CHECK_FALSE(A.satisfies_h);
    }
    CHECK_FALSE(set_fixture("ex2-A1").cone.has_value());
    CHECK(set_fixture("ex1").cone.has_value()); // declared recession cone
}

TEST_CASE("d4 gauge closed form matches direct dilation checks") {
    HSet A = set_fixture("d4");
    REQUIRE(A.gauge_oracle);
    auto g = *A.gauge_oracle;
    // axis values derive from the branch inequalities directly
    CHECK(g(v3(1, 0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g(v3(0, 1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g(v3(0, 0, 1)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(g(v3(0.5, 0.5, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    // dilation property: member(x / g) holds, member(x / (g + eps)) fails
    Rng rng(47);
    const Cone& K = A.K();
    for (int i = 0; i < 300; ++i) {
        Vector x = K.sample_point(rng, 10.0);
        double val = g(x);
        if (val <= 1e-9) continue;
        CHECK(A.member(x / (val * (1.0 - 1e-9))));
        CHECK_FALSE(A.member(x / (val * (1.0 + 1e-7))));
    }
}
