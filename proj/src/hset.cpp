// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/hset.hpp>

#include <cmath>
#include <sstream>

namespace suppdiff {

double default_bound_hint(const Vector& witness) {
    return 10.0 * std::max(1.0, witness.norm());
}

namespace {

// Largest t >= 0 with x - t*a in the Lorentz cone. The quadratic
//   q(t) = (x_p - t a_p)^2 - ||x~ - t a~||^2
// and the linear bound x_p - t a_p >= 0 together cut the interval [0, F].
double lorentz_shift_gauge(const Vector& a, const Vector& x) {
    const Eigen::Index p = x.size();
    const double ap = a[p - 1], xp = x[p - 1];
    const auto at = a.head(p - 1);
    const auto xt = x.head(p - 1);
    const double A2 = ap * ap - at.squaredNorm();       // 0 iff a on the boundary
    const double B = xp * ap - xt.dot(at);              // >= 0 for x, a in K
    const double C = xp * xp - xt.squaredNorm();        // >= 0 for x in K
    const double lin = (ap > 0.0) ? xp / ap : kInf;

    if (A2 <= 0.0) {
        if (B <= 0.0) return std::min(lin, kInf); // x parallel to a (or x = 0)
        return std::min(C / (2.0 * B), lin);
    }
    const double disc = B * B - A2 * C;
    if (disc < 0.0) return lin;
    const double tlo = (B - std::sqrt(disc)) / A2;
    return std::min(std::max(tlo, 0.0), lin);
}

} // namespace

HSet shifted_cone(const Vector& a, const Cone& K) {
    require_dim(a, K.dim(), "shifted_cone");
    require_finite(a, "shifted_cone");
    if (!K.contains(a)) throw std::invalid_argument("shifted_cone: a not in K");
    if (a.norm() == 0.0) throw std::invalid_argument("shifted_cone: a must be nonzero");

    HSet A;
    A.cone = K;
    A.witness = a;
    A.bound_hint = default_bound_hint(a);
    A.satisfies_h = true;
    A.declared_convex = true;
    Vector shift = a;
    Cone Kc = K;
    A.member = [shift, Kc](const Vector& x) { return Kc.contains(x - shift); };

    A.support_oracle = [shift, Kc](const Vector& xstar) {
        if (!Kc.dual_contains(-xstar)) return kInf;
        return shift.dot(xstar);
    };

    if (K.polyhedral_kind()) {
        // min of <x, n_i>/<a, n_i> over the normals that see a.
        std::vector<std::pair<Vector, double>> active;
        for (const auto& n : K.normals()) {
            double d = n.dot(a);
            if (d > 0.0) active.emplace_back(n, d);
        }
        if (!active.empty()) {
            A.gauge_oracle = [active](const Vector& x) {
                double t = kInf;
                for (const auto& [n, d] : active) t = std::min(t, n.dot(x) / d);
                return std::max(t, 0.0);
            };
        }
    } else {
        A.gauge_oracle = [shift](const Vector& x) {
            return std::max(lorentz_shift_gauge(shift, x), 0.0);
        };
    }

    std::ostringstream lbl;
    lbl << "shift(" << to_string(K.kind()) << K.dim() << ")";
    A.label = lbl.str();
    A.note = "translate of the cone by an interior-or-boundary vertex";
    return A;
}

HSet level_set(const ProductionFn& F, double gamma, const Vector& witness) {
    if (!(gamma > 0.0)) throw std::invalid_argument("level_set: gamma must be positive");
    require_dim(witness, F.dim, "level_set witness");
    Cone K = Cone::orthant(F.dim);
    if (!K.contains(witness) || !(F(witness) >= gamma))
        throw std::invalid_argument("level_set: witness fails membership at gamma");

    HSet A;
    A.cone = K;
    A.witness = witness;
    A.bound_hint = default_bound_hint(witness);
    A.satisfies_h = true;
    // Convexity is a property of F; callers mark it via the fixture catalog.
    A.declared_convex = false;
    ScalarFn f = F.eval;
    Cone Kc = K;
    double g = gamma;
    A.member = [f, Kc, g](const Vector& x) { return Kc.contains(x) && f(x) >= g; };

    std::ostringstream lbl;
    lbl << "L(" << F.label << "," << gamma << ")";
    A.label = lbl.str();
    A.note = "upper level set of " + F.label;
    return A;
}

} // namespace suppdiff
