// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/gauge.hpp>

#include <algorithm>
#include <cmath>

namespace suppdiff {

namespace {

double bisect_gauge(const HSet& A, const Vector& x, const GaugeOptions& opts,
                    double* bracket_width) {
    auto in_dilate = [&](double t) { return A.member(x / t); };

    double t_in = 0.0, t_out = 0.0;
    if (in_dilate(1.0)) {
        t_in = 1.0;
        double hi = 2.0;
        int k = 0;
        while (in_dilate(hi) && k++ < opts.max_doublings) {
            t_in = hi;
            hi *= 2.0;
        }
        if (k > opts.max_doublings)
            throw std::runtime_error("gauge: no upper bracket (dilation never fails)");
        t_out = hi;
    } else {
        t_out = 1.0;
        double lo = 0.5;
        int k = 0;
        while (!in_dilate(lo) && k++ < opts.max_doublings) {
            t_out = lo;
            lo *= 0.5;
            if (lo < opts.tol.gauge_floor) {
                *bracket_width = t_out;
                return 0.0; // no hit above the resolution floor
            }
        }
        t_in = lo;
    }

    for (int i = 0; i < opts.max_iter; ++i) {
        if (t_out - t_in <= opts.tol.bis_rel * (1.0 + t_in)) break;
        double mid = 0.5 * (t_in + t_out);
        if (in_dilate(mid)) t_in = mid;
        else t_out = mid;
    }
    *bracket_width = t_out - t_in;
    return t_in; // certified-member side of the bracket
}

} // namespace

GaugeEval gauge(const HSet& A, const Vector& x, const GaugeOptions& opts) {
    require_dim(x, A.dim(), "gauge");
    require_finite(x, "gauge");
    const Cone& K = A.K();
    if (!K.contains(x)) throw std::invalid_argument("gauge: x not in K");

    GaugeEval out;
    if (x.isZero(0.0)) return out; // F(0) = 0
    if (opts.use_oracle && A.gauge_oracle) {
        out.value = (*A.gauge_oracle)(x);
        return out;
    }
    out.value = bisect_gauge(A, x, opts, &out.bracket_width);
    return out;
}

GaugeCheckReport level_identity_check(const HSet& A, double gamma,
                                      const std::vector<Vector>& samples,
                                      const GaugeOptions& opts) {
    if (gamma < 0.0) throw std::invalid_argument("level_identity_check: gamma < 0");
    GaugeCheckReport rep;
    rep.check = "level_identity";
    rep.sample_count = samples.size();
    if (gamma == 0.0) return rep; // 0*A is the whole cone: trivial on K-samples

    const double band = 1e-7 * (1.0 + gamma);
    for (const auto& x : samples) {
        double g = gauge(A, x, opts).value;
        if (std::abs(g - gamma) <= band) continue; // boundary band, fuzz-free membership
        bool lhs = g >= gamma;
        bool rhs = A.member(x / gamma);
        if (lhs != rhs) {
            rep.holds = false;
            rep.witnesses.emplace_back(x, x / gamma);
        }
    }
    return rep;
}

GaugeCheckReport monotonicity_check(const HSet& A,
                                    const std::vector<std::pair<Vector, Vector>>& pairs,
                                    bool strict, const GaugeOptions& opts) {
    GaugeCheckReport rep;
    rep.check = strict ? "monotonicity_strict" : "monotonicity";
    rep.sample_count = pairs.size();
    const double tol = 1e-9 * (1.0 + A.bound_hint);
    const double margin = opts.tol.strict_margin(A.bound_hint);
    for (const auto& [x, xp] : pairs) {
        double gx = gauge(A, x, opts).value;
        double gxp = gauge(A, xp, opts).value;
        if (!strict) {
            if (gxp < gx - tol) {
                rep.holds = false;
                rep.witnesses.emplace_back(x, xp);
            }
        } else {
            if (gx <= tol) continue;                 // x outside PA, nothing to assert
            if ((xp - x).norm() < margin) continue;  // k too small to separate
            if (gxp <= gx + margin * 1e-3) {
                rep.holds = false;
                rep.witnesses.emplace_back(x, xp);
            }
        }
    }
    return rep;
}

std::vector<std::pair<double, double>> continuity_probe(const HSet& A, const Vector& x0,
                                                        const std::vector<double>& radii,
                                                        std::uint64_t seed,
                                                        int samples_per_radius,
                                                        const GaugeOptions& opts) {
    require_dim(x0, A.dim(), "continuity_probe");
    const Cone& K = A.K();
    if (!K.contains(x0)) throw std::invalid_argument("continuity_probe: x0 not in K");

    std::vector<std::pair<double, double>> out;
    Rng rng(seed);
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double r = radii[ri];
        Rng sub = rng.fork(ri);
        double lo = kInf, hi = -kInf;
        auto eval = [&](const Vector& y) {
            double g = gauge(A, y, opts).value;
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        };
        eval(x0);
        for (int k = 0; k < samples_per_radius; ++k) {
            Vector y = x0 + r * sub.unit_vector(A.dim()) * sub.uniform();
            if (K.contains(y)) eval(y);
            // structural boundary samples: jumps of the gauge live on bd K
            if (auto b = K.sample_boundary_near(x0, r, sub)) {
                if ((*b - x0).norm() <= r && K.contains(*b)) eval(*b);
            }
        }
        out.emplace_back(r, hi - lo);
    }
    return out;
}

GaugeCheckReport quasiconcavity_check(
    const HSet& A, const std::vector<std::tuple<Vector, Vector, double>>& triples,
    StrictDomain strict, const GaugeOptions& opts) {
    GaugeCheckReport rep;
    rep.check = strict == StrictDomain::None ? "quasiconcavity" : "quasiconcavity_strict";
    rep.sample_count = triples.size();
    const Cone& K = A.K();
    const double tol = 1e-9 * (1.0 + A.bound_hint);
    const double margin = opts.tol.strict_margin(A.bound_hint);
    for (const auto& [x, xp, lam] : triples) {
        if (!(lam > 0.0 && lam < 1.0)) continue;
        Vector mid = lam * x + (1.0 - lam) * xp;
        double gx = gauge(A, x, opts).value;
        double gxp = gauge(A, xp, opts).value;
        double gm = gauge(A, mid, opts).value;
        double mn = std::min(gx, gxp);
        if (strict == StrictDomain::None) {
            if (gm < mn - tol) {
                rep.holds = false;
                rep.witnesses.emplace_back(x, xp);
                rep.witness_lambdas.push_back(lam);
            }
            continue;
        }
        if ((x - xp).norm() < margin) continue;
        if (gx <= tol || gxp <= tol) continue;
        if (strict == StrictDomain::InteriorK &&
            !(K.interior_contains(x) && K.interior_contains(xp)))
            continue;
        if (gm <= mn + margin * 1e-3) {
            rep.holds = false;
            rep.witnesses.emplace_back(x, xp);
            rep.witness_lambdas.push_back(lam);
        }
    }
    return rep;
}

} // namespace suppdiff
