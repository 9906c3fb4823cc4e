// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/fixtures.hpp>

#include <cmath>
#include <map>

namespace suppdiff {

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

// ---------------------------------------------------------------------------
// d4: the 3-D convex set with a flat edge on the z = 0 face whose support
// function is nevertheless differentiable on the interior of its domain.
//   A = {x,y,z >= 0 : x+y <= 1, z >= h(x,y)} u {x,y,z >= 0 : x+y >= 1},
//   h(x,y) = (x+y-1)^2 / (2 (2 - (x-y)^2)).
// ---------------------------------------------------------------------------

double d4_surface(double x, double y) {
    const double s = x + y - 1.0;
    const double d = x - y;
    return 0.5 * s * s / (2.0 - d * d);
}

bool d4_member(const Vector& v) {
    if (v[0] < 0.0 || v[1] < 0.0 || v[2] < 0.0) return false;
    if (v[0] + v[1] >= 1.0) return true;
    return v[2] >= d4_surface(v[0], v[1]);
}

// Gauge of d4 in closed form: the dilation condition x in tA reduces for
// t >= x+y to the cubic
//   q(t) = t (s - t)^2 - 2 z (2 t^2 - d^2) <= 0,   s = x+y, d = x-y,
// whose admissible t-set is the interval (0, F]; bisection on the first sign
// change gives F to machine precision.
double d4_gauge(const Vector& v) {
    const double x = v[0], y = v[1], z = v[2];
    const double s = x + y, d = x - y;
    if (s <= 0.0 && z <= 0.0) return 0.0;
    auto q = [&](double t) { return t * (s - t) * (s - t) - 2.0 * z * (2.0 * t * t - d * d); };
    double lo = s;
    double hi = std::max(1.0, 2.0 * s) + 8.0 * z;
    int guard = 0;
    while (q(hi) <= 0.0 && guard++ < 60) hi *= 2.0;
    if (q(hi) <= 0.0) return hi; // unreachable for finite inputs
    for (int i = 0; i < 90; ++i) {
        double mid = 0.5 * (lo + hi);
        if (q(mid) <= 0.0) lo = mid;
        else hi = mid;
    }
    return lo;
}

// ---------------------------------------------------------------------------
// Production functions
// ---------------------------------------------------------------------------

// Upper semicontinuous, strictly quasiconcave where positive, discontinuous
// on the unit hyperbola away from the arc 1/2 < x1 < 2. Branch order matters:
// first match wins, and the arc keeps the low branch value.
double adsz_eval(const Vector& v) {
    const double x1 = v[0], x2 = v[1];
    const double p = x1 * x2;
    if (p < 1.0 || (0.5 < x1 && x1 < 2.0 && p == 1.0)) return p;
    if (p >= 1.0 && x1 + x2 >= 2.5) return 1.5 + p;
    if (p > 1.0 && x1 + x2 < 2.5) return 1.0 + (p - 1.0) / (2.5 * x1 - 1.0 - x1 * x1);
    return p;
}

double smooth_g_eval(const Vector& v) {
    return v[0] + v[1] + std::sqrt(v[0] * v[1]);
}

double clamp_phi(double t) { return std::min(t, std::max(1.0, t - 1.0)); }

// ---------------------------------------------------------------------------

HSet make_ex1() {
    HSet A;
    A.label = "ex1";
    A.note = "region above |a|(1+(a^2+1)^-1); nonconvex, vertex pinned at the origin";
    A.cone = Cone::polyhedral(2, {vec2(-1.0, 1.0), vec2(1.0, 1.0)});
    A.member = [](const Vector& v) {
        return v[1] >= std::abs(v[0]) * (1.0 + 1.0 / (v[0] * v[0] + 1.0));
    };
    Cone K = *A.cone;
    A.support_oracle = [K](const Vector& xstar) {
        return K.dual_contains(-xstar) ? 0.0 : kInf;
    };
    A.witness = vec2(0.0, 0.0);
    A.bound_hint = 10.0;
    A.satisfies_h = false;
    A.declared_convex = false;
    return A;
}

HSet make_ex2(int which) {
    HSet A;
    A.satisfies_h = false;
    A.declared_convex = false;
    switch (which) {
        case 1:
            A.label = "ex2-A1";
            A.note = "unit circle";
            A.member = [](const Vector& v) { return v.squaredNorm() == 1.0; };
            A.support_oracle = [](const Vector& u) { return u.norm(); };
            A.witness = vec2(1.0, 0.0);
            break;
        case 2:
            A.label = "ex2-A2";
            A.note = "annulus 1/2 <= |x| <= 1";
            A.member = [](const Vector& v) {
                double n2 = v.squaredNorm();
                return n2 >= 0.25 && n2 <= 1.0;
            };
            A.support_oracle = [](const Vector& u) { return u.norm(); };
            A.witness = vec2(1.0, 0.0);
            break;
        case 3:
            A.label = "ex2-A3";
            A.note = "hyperbola graph y = 1/x, x > 0";
            A.cone = Cone::orthant(2);
            A.member = [](const Vector& v) { return v[0] > 0.0 && v[0] * v[1] == 1.0; };
            A.support_oracle = [](const Vector& u) {
                if (u[0] > 0.0 || u[1] > 0.0) return kInf;
                return -2.0 * std::sqrt(u[0] * u[1]);
            };
            A.witness = vec2(1.0, 1.0);
            break;
        case 4:
            A.label = "ex2-A4";
            A.note = "hyperbola band 1/x <= y <= 2/x, x > 0";
            A.cone = Cone::orthant(2);
            A.member = [](const Vector& v) {
                if (v[0] <= 0.0 || v[1] <= 0.0) return false;
                double p = v[0] * v[1];
                return p >= 1.0 && p <= 2.0;
            };
            A.support_oracle = [](const Vector& u) {
                if (u[0] > 0.0 || u[1] > 0.0) return kInf;
                return -2.0 * std::sqrt(u[0] * u[1]);
            };
            A.witness = vec2(1.0, 1.0);
            break;
        default:
            throw std::logic_error("ex2 index");
    }
    A.bound_hint = default_bound_hint(A.witness);
    return A;
}

HSet make_ex3b() {
    HSet A;
    A.label = "ex3b";
    A.note = "halfplane slice x1+x2 >= 1 of the orthant";
    A.cone = Cone::orthant(2);
    A.member = [](const Vector& v) { return v[0] >= 0.0 && v[1] >= 0.0 && v[0] + v[1] >= 1.0; };
    A.support_oracle = [](const Vector& u) {
        if (u[0] > 0.0 || u[1] > 0.0) return kInf;
        return std::max(u[0], u[1]);
    };
    A.gauge_oracle = [](const Vector& x) { return x[0] + x[1]; };
    A.witness = vec2(1.0, 1.0);
    A.bound_hint = default_bound_hint(A.witness);
    A.satisfies_h = true;
    A.declared_convex = true;
    return A;
}

HSet make_d4() {
    HSet A;
    A.label = "d4";
    A.note = "convex 3-D set with a flat boundary edge but smooth support function";
    A.cone = Cone::orthant(3);
    A.member = d4_member;
    A.gauge_oracle = d4_gauge;
    A.witness = vec3(1.0, 1.0, 0.0);
    A.bound_hint = default_bound_hint(A.witness);
    A.satisfies_h = true;
    A.declared_convex = true;
    return A;
}

HSet make_hyperbola_set() {
    HSet A;
    A.label = "hyperbola-set";
    A.note = "strictly convex region x1*x2 >= 1 in the orthant";
    A.cone = Cone::orthant(2);
    A.member = [](const Vector& v) {
        return v[0] >= 0.0 && v[1] >= 0.0 && v[0] * v[1] >= 1.0;
    };
    A.support_oracle = [](const Vector& u) {
        if (u[0] > 0.0 || u[1] > 0.0) return kInf;
        return -2.0 * std::sqrt(u[0] * u[1]);
    };
    A.gauge_oracle = [](const Vector& x) { return std::sqrt(x[0] * x[1]); };
    A.witness = vec2(1.0, 1.0);
    A.bound_hint = default_bound_hint(A.witness);
    A.satisfies_h = true;
    A.declared_convex = true;
    return A;
}

ProductionFn make_production(const std::string& name) {
    ProductionFn F;
    F.label = name;
    if (name == "hyperbola") {
        F.dim = 2;
        F.eval = [](const Vector& v) { return v[0] * v[1]; };
        F.note = "Cobb-Douglas style product x1*x2";
        F.claimed_axioms = {"F.1", "F.2", "F.2c", "F.2d", "F.3",
                            "F.3c", "F.3d", "F.4", "F.4b", "F.4c", "F.4d", "F.5"};
    } else if (name == "ex-adsz") {
        F.dim = 2;
        F.eval = adsz_eval;
        F.note = "usc production function, strictly quasiconcave where positive, "
                 "discontinuous on part of the unit hyperbola";
        F.claimed_axioms = {"F.1", "F.2", "F.2c", "F.2d", "F.3", "F.3c", "F.3d", "F.4", "F.5"};
        F.continuity_suspects = {vec2(2.0, 0.5), vec2(0.5, 2.0), vec2(3.0, 1.0 / 3.0)};
    } else if (name == "phi-g") {
        F.dim = 2;
        F.eval = [](const Vector& v) { return clamp_phi(smooth_g_eval(v)); };
        F.note = "clamped smooth function; flat band between levels 1 and 2";
        F.claimed_axioms = {"F.1", "F.2", "F.3", "F.4", "F.4b", "F.4c", "F.4d", "F.5"};
        F.strict_pairs = {{vec2(0.45, 0.45), vec2(0.55, 0.55)}};
        F.strict_triples = {{vec2(0.4, 0.5), vec2(0.5, 0.4)}};
    } else if (name == "smooth-g") {
        F.dim = 2;
        F.eval = smooth_g_eval;
        F.note = "x1 + x2 + sqrt(x1*x2); strictly monotone and strictly quasiconcave";
        F.claimed_axioms = {"F.1", "F.2",  "F.2b", "F.2c", "F.2d", "F.3",  "F.3b",
                            "F.3c", "F.3d", "F.4",  "F.4b", "F.4c", "F.4d", "F.5"};
    } else if (name == "leontieff-f") {
        F.dim = 2;
        F.eval = [](const Vector& v) { return std::min(v[0], v[1] / 2.0); };
        F.note = "Leontieff min-ratio with requirement vector (1,2)";
        F.claimed_axioms = {"F.1", "F.2", "F.3", "F.4", "F.4b", "F.4c", "F.4d", "F.5"};
        F.strict_pairs = {{vec2(1.0, 2.0), vec2(1.0, 3.0)}};
        F.strict_triples = {{vec2(1.0, 2.0), vec2(1.0, 4.0)}};
    } else if (name == "d4-gauge") {
        F.dim = 3;
        F.eval = d4_gauge;
        F.note = "gauge of the d4 set; continuous, strictly monotone, "
                 "quasiconcave but not strictly so";
        F.claimed_axioms = {"F.1", "F.2",  "F.2b", "F.2c", "F.2d", "F.3",
                            "F.4", "F.4b", "F.4c", "F.4d", "F.5"};
        F.strict_triples = {{vec3(1.0, 0.0, 0.0), vec3(0.0, 1.0, 0.0)}};
    } else if (name == "zero") {
        F.dim = 2;
        F.eval = [](const Vector&) { return 0.0; };
        F.note = "identically zero";
        F.claimed_axioms = {"F.1", "F.2", "F.3", "F.4", "F.4b", "F.4c", "F.4d"};
    } else {
        throw std::invalid_argument("unknown production fixture '" + name + "'");
    }
    return F;
}

} // namespace

HSet set_fixture(const std::string& name) {
    if (name == "ex1") return make_ex1();
    if (name == "ex2-A1") return make_ex2(1);
    if (name == "ex2-A2") return make_ex2(2);
    if (name == "ex2-A3") return make_ex2(3);
    if (name == "ex2-A4") return make_ex2(4);
    if (name == "ex3a") {
        HSet A = shifted_cone(vec2(1.0, 2.0), Cone::orthant(2));
        A.label = "ex3a";
        return A;
    }
    if (name == "ex3b") return make_ex3b();
    if (name == "ex3c") {
        HSet A = shifted_cone(vec3(1.0, 0.0, 1.0), Cone::lorentz(3));
        A.label = "ex3c";
        A.note = "Lorentz cone shifted along a boundary ray; gauge jumps off the ray";
        return A;
    }
    if (name == "leontieff") {
        HSet A = shifted_cone(vec3(1.0, 2.0, 4.0), Cone::orthant(3));
        A.label = "leontieff";
        A.note = "orthant shifted by (1,2,4); min-ratio gauge";
        return A;
    }
    if (name == "d4") return make_d4();
    if (name == "hyperbola-set") return make_hyperbola_set();
    if (name == "adsz-L52") {
        HSet A = level_set(production_fixture("ex-adsz"), 2.5, vec2(0.5, 2.0));
        A.label = "adsz-L52";
        A.note = "level 5/2 of the usc fixture: x1*x2 >= 1 and x1+x2 >= 5/2";
        A.declared_convex = true;
        return A;
    }
    throw std::invalid_argument("unknown set fixture '" + name + "'");
}

ProductionFn production_fixture(const std::string& name) { return make_production(name); }

bool is_set_fixture(const std::string& name) {
    try {
        set_fixture(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

bool is_production_fixture(const std::string& name) {
    try {
        production_fixture(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::vector<FixtureInfo> list_fixtures() {
    std::vector<FixtureInfo> out;
    for (const char* n : {"ex1", "ex2-A1", "ex2-A2", "ex2-A3", "ex2-A4", "ex3a", "ex3b",
                          "ex3c", "leontieff", "d4", "hyperbola-set", "adsz-L52"}) {
        HSet A = set_fixture(n);
        out.push_back({n, "set", A.dim(), A.satisfies_h, A.note});
    }
    for (const char* n :
         {"hyperbola", "ex-adsz", "phi-g", "smooth-g", "leontieff-f", "d4-gauge", "zero"}) {
        ProductionFn F = production_fixture(n);
        out.push_back({n, "production", F.dim, false, F.note});
    }
    return out;
}

} // namespace suppdiff
