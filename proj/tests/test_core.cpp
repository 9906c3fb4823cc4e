// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/cone.hpp>
#include <suppdiff/report.hpp>

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

TEST_CASE("orthant membership and interior") {
    Cone K = Cone::orthant(2);
    CHECK(K.contains(v2(1, 0)));
    CHECK(K.interior_contains(v2(1, 1)));
    CHECK_FALSE(K.interior_contains(v2(1, 0)));
    CHECK_THROWS_AS(K.contains(v3(1, 0, 0)), std::invalid_argument);
}

TEST_CASE("lorentz membership is exact on the boundary") {
    Cone K = Cone::lorentz(3);
    CHECK(K.contains(v3(1, 0, 1)));       // equality case
    CHECK_FALSE(K.contains(v3(1, 1, 1))); // sqrt(2) > 1
    CHECK(K.interior_contains(v3(0, 0, 1)));
    CHECK_FALSE(K.interior_contains(v3(1, 0, 1)));
}

TEST_CASE("dual and strict dual queries") {
    Cone O = Cone::orthant(2);
    CHECK(O.dual_contains(v2(1, 2)));
    CHECK_FALSE(O.dual_contains(v2(-1, 2)));
    CHECK(O.strict_dual_contains(v2(1, 1)));
    CHECK_FALSE(O.strict_dual_contains(v2(1, 0))); // vanishes on the e2 ray

    Cone L = Cone::lorentz(3);
    CHECK(L.dual_contains(v3(0, 0, 1)));
    CHECK(L.strict_dual_contains(v3(0, 0, 1)));
    CHECK_FALSE(L.strict_dual_contains(v3(1, 0, 1)));
}

TEST_CASE("polyhedral cone: rays, interior witness, pointedness") {
    // {(a,b) : b >= |a|}
    Cone K = Cone::polyhedral(2, {v2(-1, 1), v2(1, 1)});
    CHECK(K.generators().size() == 2);
    CHECK(K.contains(v2(0.5, 0.5)));
    CHECK(K.contains(v2(-0.5, 0.5)));
    CHECK_FALSE(K.contains(v2(1.0, 0.5)));
    CHECK(K.interior_contains(K.interior_point()));

    // not pointed: single normal in 2-D
    CHECK_THROWS_AS(Cone::polyhedral(2, {v2(1, 0)}), std::invalid_argument);
}

TEST_CASE("polyhedral dual agrees with the sampled definition") {
    Cone K = Cone::polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 1)});
    Rng rng(7);
    auto pts = [&](int n) {
        std::vector<Vector> out;
        for (int i = 0; i < n; ++i) out.push_back(K.sample_point(rng, 3.0));
        return out;
    };
    auto members = pts(200);
    for (int i = 0; i < 400; ++i) {
        Vector y = rng.gaussian_vector(3);
        bool dual = K.dual_contains(y);
        bool sampled = true;
        for (const auto& x : members)
            if (x.dot(y) < -1e-9 * (1.0 + x.norm() * y.norm())) sampled = false;
        if (dual) CHECK(sampled); // generators certify nonnegativity everywhere
    }
}

TEST_CASE("duality involution for polyhedral cones") {
    Cone K = Cone::polyhedral(2, {v2(-1, 2), v2(1, 1)});
    Cone KDD = K.dual().dual();
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        Vector x = rng.gaussian_vector(2) * 3.0;
        CHECK(K.contains(x) == KDD.contains(x));
    }
}

TEST_CASE("strict dual is inside the dual") {
    for (const Cone& K : {Cone::orthant(3), Cone::lorentz(3),
                          Cone::polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(1, 1, 2)})}) {
        Rng rng(13);
        for (int i = 0; i < 1000; ++i) {
            Vector y = rng.gaussian_vector(3) * 2.0;
            if (K.strict_dual_contains(y)) CHECK(K.dual_contains(y));
        }
    }
}

TEST_CASE("pointedness: no nonzero opposite pair survives sampling") {
    for (const Cone& K : {Cone::orthant(2), Cone::lorentz(3),
                          Cone::polyhedral(2, {v2(-1, 1), v2(1, 1)})}) {
        Rng rng(17);
        for (int i = 0; i < 10000; ++i) {
            Vector v = rng.gaussian_vector(K.dim());
            if (K.contains(v) && K.contains((-v).eval())) CHECK(v.norm() == 0.0);
        }
    }
}

TEST_CASE("cone JSON round trip") {
    for (const Cone& K : {Cone::orthant(4), Cone::lorentz(3),
                          Cone::polyhedral(2, {v2(-1, 1), v2(2, 1)})}) {
        Cone back = Cone::from_json(K.to_json());
        CHECK(back.kind() == K.kind());
        CHECK(back.dim() == K.dim());
        Rng rng(19);
        for (int i = 0; i < 200; ++i) {
            Vector x = rng.gaussian_vector(K.dim());
            CHECK(back.contains(x) == K.contains(x));
        }
    }
    CHECK_THROWS(Cone::from_json(Json::parse(R"({"variant":"simplex","dim":2})")));
}

TEST_CASE("boundary sampler stays on the boundary") {
    Cone L = Cone::lorentz(3);
    Rng rng(23);
    Vector a = v3(1, 0, 1);
    int found = 0;
    for (int i = 0; i < 100; ++i) {
        auto b = L.sample_boundary_near(a, 0.1, rng);
        if (!b) continue;
        ++found;
        CHECK(L.contains(*b));
        CHECK(L.margin(*b) <= 1e-9); // on the boundary up to rounding
    }
    CHECK(found > 50);
}
