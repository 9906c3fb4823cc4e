// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/support.hpp>

#include <algorithm>
#include <cmath>

namespace suppdiff {

std::string to_string(SupportStatus s) {
    switch (s) {
        case SupportStatus::Finite: return "finite";
        case SupportStatus::PlusInfinity: return "plus_infinity";
        case SupportStatus::BoundarySuspect: return "boundary_suspect";
    }
    return "?";
}

std::string to_string(DiffVerdict v) {
    switch (v) {
        case DiffVerdict::Differentiable: return "differentiable";
        case DiffVerdict::NotDifferentiable: return "not_differentiable";
        case DiffVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::string to_string(CompactnessVerdict v) {
    switch (v) {
        case CompactnessVerdict::Compact: return "compact";
        case CompactnessVerdict::Unbounded: return "unbounded";
        case CompactnessVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

double halton(std::size_t i, int base) {
    double f = 1.0, r = 0.0;
    for (std::size_t n = i + 1; n > 0; n /= base) {
        f /= base;
        r += f * static_cast<double>(n % base);
    }
    return r;
}

constexpr int kHaltonBases[4] = {2, 3, 5, 7};

// full +-{0,1} move stencil (3^p - 1 directions), normalized
std::vector<Vector> move_stencil(int p) {
    std::vector<Vector> dirs;
    const int total = static_cast<int>(std::pow(3.0, p));
    for (int code = 1; code < total; ++code) {
        int c = code;
        Vector d = Vector::Zero(p);
        for (int i = 0; i < p; ++i) {
            int digit = c % 3;
            c /= 3;
            d[i] = digit == 2 ? -1.0 : static_cast<double>(digit);
        }
        if (d.isZero()) continue;
        dirs.push_back(d / d.norm());
    }
    return dirs;
}

struct SearchResult {
    double best = -kInf;
    std::vector<Vector> endpoints;
    bool hit_box = false;
};

class LinearMaximizer {
public:
    LinearMaximizer(const HSet& A, const Vector& xstar, const SupportOptions& opts)
        : A_(A), xstar_(xstar), opts_(opts), stencil_(move_stencil(static_cast<int>(xstar.size()))) {}

    double value(const Vector& u) const { return xstar_.dot(u); }

    bool inside_box(const Vector& u, double R) const { return u.cwiseAbs().maxCoeff() <= R; }

    Vector ascend(Vector u, double R, Rng& rng) const {
        const int p = static_cast<int>(u.size());
        double val = value(u);
        const double h_floor = opts_.step_floor_frac * R;
        Vector dir_obj = xstar_.norm() > 0 ? (xstar_ / xstar_.norm()).eval() : Vector::Zero(p);
        for (double h = 0.25 * R; h >= h_floor; h *= 0.5) {
            std::vector<Vector> extra;
            extra.reserve(opts_.rng_dirs + 1);
            for (int k = 0; k < opts_.rng_dirs; ++k) extra.push_back(rng.unit_vector(p));
            if (!dir_obj.isZero()) extra.push_back(dir_obj);
            for (int sweep = 0; sweep < 40; ++sweep) {
                double best_gain = 0.0;
                Vector best_pt;
                auto consider = [&](const Vector& d) {
                    Vector cand = u + h * d;
                    double v = value(cand);
                    if (v <= val + best_gain) return; // linear objective: test first
                    if (!inside_box(cand, R) || !A_.member(cand)) return;
                    best_gain = v - val;
                    best_pt = cand;
                };
                for (const auto& d : stencil_) consider(d);
                for (const auto& d : extra) consider(d);
                if (best_gain <= 0.0) break;
                u = best_pt;
                val += best_gain;
            }
        }
        return u;
    }

    // Entry point of the ray z + t*w into A near t = 0 (member side of the
    // crossing). For translation-stable sets membership along an interior
    // cone direction is monotone, which makes the bisection exact.
    std::optional<Vector> project_entry(const Vector& z, const Vector& w, double span) const {
        const int scan = 16;
        double prev = -span;
        bool prev_member = false;
        for (int i = 0; i <= 2 * scan; ++i) {
            double t = -span + span * static_cast<double>(i) / scan;
            bool m = A_.member(z + t * w);
            if (m) {
                if (i == 0) return (z + t * w).eval();
                double lo = prev, hi = t; // lo misses, hi hits
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (A_.member(z + mid * w)) hi = mid;
                    else lo = mid;
                }
                return (z + hi * w).eval();
            }
            prev = t;
            prev_member = m;
        }
        (void)prev_member;
        return std::nullopt;
    }

    // Walks the boundary of A through tangential probes projected back along
    // an interior direction. Shrinking the probe radius geometrically gives
    // terminal accuracy far past what the direction stencil can resolve, both
    // at smooth maximizers and at vertices.
    Vector boundary_polish(Vector u, double R, Rng& rng) const {
        Vector w;
        if (A_.cone) w = A_.cone->interior_point();
        else if (xstar_.norm() > 0) w = -xstar_;
        else return u;
        w /= w.norm();
        if (std::abs(value(w)) < 1e-15 * xstar_.norm()) return u;
        const int p = static_cast<int>(u.size());
        double val = value(u);
        for (double r = 1e-2 * R; r >= opts_.polish_floor_frac * R; r *= 0.5) {
            for (int pass = 0; pass < 3; ++pass) {
                bool improved = false;
                for (int k = 0; k < 6 + 2 * p; ++k) {
                    Vector d = rng.unit_vector(p);
                    d -= d.dot(w) * w;
                    double n = d.norm();
                    if (n < 1e-9) continue;
                    d /= n;
                    auto pr = project_entry(u + r * d, w, 8.0 * r);
                    if (!pr) continue;
                    double v = value(*pr);
                    if (v > val && A_.member(*pr) && inside_box(*pr, R)) {
                        u = *pr;
                        val = v;
                        improved = true;
                    }
                }
                if (!improved) break;
            }
        }
        return u;
    }

    // Widen within {member(u), value(u) >= floor_val} along +-dir; used to
    // measure the extent of near-maximizer sets.
    Vector widen(Vector u, const Vector& dir, double floor_val, double R, Rng& rng) const {
        const int p = static_cast<int>(u.size());
        double score = dir.dot(u);
        const double h_floor = opts_.step_floor_frac * R;
        for (double h = 0.25 * R; h >= h_floor; h *= 0.5) {
            std::vector<Vector> extra;
            for (int k = 0; k < opts_.rng_dirs; ++k) extra.push_back(rng.unit_vector(p));
            for (int sweep = 0; sweep < 40; ++sweep) {
                double best_gain = 0.0;
                Vector best_pt;
                auto consider = [&](const Vector& d) {
                    Vector cand = u + h * d;
                    double sc = dir.dot(cand);
                    if (sc <= score + best_gain) return;
                    if (!inside_box(cand, R)) return;
                    if (value(cand) < floor_val) return;
                    if (!A_.member(cand)) return;
                    best_gain = sc - score;
                    best_pt = cand;
                };
                consider(dir);
                for (const auto& d : stencil_) consider(d);
                for (const auto& d : extra) consider(d);
                if (best_gain <= 0.0) break;
                u = best_pt;
                score += best_gain;
            }
        }
        return u;
    }

    SearchResult run(double R, Rng& rng) const {
        const int p = static_cast<int>(xstar_.size());
        SearchResult res;
        std::vector<Vector> starts;
        starts.push_back(A_.witness);
        for (int i = 0; i < opts_.starts - 1; ++i) {
            Vector h(p);
            for (int d = 0; d < p; ++d)
                h[d] = (2.0 * halton(static_cast<std::size_t>(i), kHaltonBases[d % 4]) - 1.0) * R;
            if (A_.member(h)) {
                starts.push_back(h);
                continue;
            }
            // walk from the witness toward the probe, keep the last member
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 30; ++it) {
                double mid = 0.5 * (lo + hi);
                Vector y = A_.witness + mid * (h - A_.witness);
                if (A_.member(y)) lo = mid;
                else hi = mid;
            }
            starts.push_back(A_.witness + lo * (h - A_.witness));
        }
        for (const auto& s : starts) {
            Vector e = ascend(s, R, rng);
            double v = value(e);
            if (v > res.best) res.best = v;
            res.endpoints.push_back(std::move(e));
        }
        // polish the incumbent along the boundary; the stencil search alone
        // stalls where the improving cone narrows with the remaining gap
        std::size_t bi = 0;
        for (std::size_t i = 1; i < res.endpoints.size(); ++i)
            if (value(res.endpoints[i]) > value(res.endpoints[bi])) bi = i;
        if (!res.endpoints.empty()) {
            Vector polished = boundary_polish(res.endpoints[bi], R, rng);
            double v = value(polished);
            if (v > res.best) {
                res.best = v;
                res.endpoints.push_back(std::move(polished));
            }
        }
        for (const auto& e : res.endpoints) {
            if (value(e) >= res.best - opts_.tol.tol_val(res.best) &&
                e.cwiseAbs().maxCoeff() >= R * (1.0 - 1e-3))
                res.hit_box = true;
        }
        return res;
    }

private:
    const HSet& A_;
    const Vector& xstar_;
    const SupportOptions& opts_;
    std::vector<Vector> stencil_;
};

double pairwise_diameter(const std::vector<Vector>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            d = std::max(d, (pts[i] - pts[j]).norm());
    return d;
}

std::pair<std::size_t, std::size_t> farthest_pair(const std::vector<Vector>& pts) {
    double d = -1.0;
    std::pair<std::size_t, std::size_t> out{0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double dij = (pts[i] - pts[j]).norm();
            if (dij > d) {
                d = dij;
                out = {i, j};
            }
        }
    return out;
}

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::vector<Vector> cluster_representatives(std::vector<Vector> pts, double radius) {
    std::vector<Vector> reps;
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        // grow a cluster by chaining within the merge radius
        std::vector<std::size_t> cluster{i};
        used[i] = true;
        for (std::size_t c = 0; c < cluster.size(); ++c)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (!used[j] && (pts[cluster[c]] - pts[j]).norm() <= radius) {
                    used[j] = true;
                    cluster.push_back(j);
                }
        reps.push_back(pts[cluster.front()]); // lex-min member, deterministic
    }
    return reps;
}

// normalized signed margin of -xstar w.r.t. the strict dual of K
double domain_margin(const HSet& A, const Vector& xstar) {
    if (!A.cone) return 1.0; // bounded fixture: support finite everywhere
    double nx = xstar.norm();
    if (nx == 0.0) return 1.0; // sigma(0) = 0 is always finite
    return A.cone->dual_margin(-xstar) / nx;
}

constexpr double kBoundaryEps = 1e-11;

} // namespace

SupportEval support_value(const HSet& A, const Vector& xstar, const SupportOptions& opts) {
    require_dim(xstar, A.dim(), "support_value");
    require_finite(xstar, "support_value");

    SupportEval out;
    const double m = domain_margin(A, xstar);
    if (m < -kBoundaryEps) {
        out.status = SupportStatus::PlusInfinity;
        out.value = kInf;
        return out;
    }
    out.status = (m > kBoundaryEps) ? SupportStatus::Finite : SupportStatus::BoundarySuspect;

    std::optional<double> oracle_val;
    if (opts.use_oracle && A.support_oracle) {
        double v = (*A.support_oracle)(xstar);
        if (std::isfinite(v)) oracle_val = v;
        else {
            // oracle says the point is outside the domain
            out.status = SupportStatus::PlusInfinity;
            out.value = kInf;
            return out;
        }
    }

    Rng rng(opts.seed);
    double R = A.bound_hint;
    SearchResult sr;
    for (int e = 0; e <= opts.max_expand; ++e) {
        Rng sub = rng.fork(1000 + e);
        sr = LinearMaximizer(A, xstar, opts).run(R, sub);
        if (!sr.hit_box) break;
        if (e < opts.max_expand) R *= 2.0;
        else out.truncated = true;
    }

    double best = sr.best;
    double sigma = oracle_val ? *oracle_val : best;
    if (oracle_val && best > *oracle_val + opts.tol.tol_val(*oracle_val)) {
        // numeric evidence beats a stale oracle; keep the larger value
        sigma = best;
    }
    out.value = sigma;
    // hint only when the best numeric point certifies sigma
    if (std::abs(best - sigma) <= opts.tol.tol_val(sigma)) {
        const Vector* arg = nullptr;
        for (const auto& e : sr.endpoints)
            if (xstar.dot(e) == best) { arg = &e; break; }
        if (arg) out.maximizer_hint = *arg;
    }
    return out;
}

ArgmaxSet argmax_set(const HSet& A, const Vector& xstar, const SupportOptions& opts) {
    require_dim(xstar, A.dim(), "argmax_set");
    require_finite(xstar, "argmax_set");
    // Strictly inside the dual domain the maximizer set is nonempty and
    // compact; on the boundary the search still runs best-effort (truncation
    // flags a runaway), and past it the value is infinite.
    const double m = domain_margin(A, xstar);
    if (A.cone && m < -kBoundaryEps)
        throw std::invalid_argument("argmax_set: support value is +infinity at xstar");

    Rng rng(opts.seed);
    double R = A.bound_hint;
    ArgmaxSet out;
    SearchResult sr;
    for (int e = 0; e <= opts.max_expand; ++e) {
        Rng sub = rng.fork(2000 + e);
        sr = LinearMaximizer(A, xstar, opts).run(R, sub);
        if (!sr.hit_box) break;
        if (e < opts.max_expand) R *= 2.0;
        else out.truncated = true;
    }

    double sigma = sr.best;
    if (opts.use_oracle && A.support_oracle) {
        double v = (*A.support_oracle)(xstar);
        if (std::isfinite(v)) {
            if (v > sigma + opts.tol.tol_val(v)) out.truncated = true; // search fell short
            sigma = std::max(sigma, v);
        }
    }
    out.sigma = sigma;

    const double tol_val = opts.tol.tol_val(sigma);
    std::vector<Vector> cands;
    for (const auto& e : sr.endpoints)
        if (xstar.dot(e) >= sigma - tol_val) cands.push_back(e);
    if (cands.empty()) {
        // keep the best endpoint so callers still see a witness
        if (!sr.endpoints.empty()) {
            std::size_t bi = 0;
            for (std::size_t i = 1; i < sr.endpoints.size(); ++i)
                if (xstar.dot(sr.endpoints[i]) > xstar.dot(sr.endpoints[bi])) bi = i;
            cands.push_back(sr.endpoints[bi]);
        }
        out.truncated = true;
    }

    const double tol_diam = opts.tol.tol_diam(A.bound_hint);
    double diam = pairwise_diameter(cands);
    if (diam > tol_diam && cands.size() >= 2) {
        // measure the true extent: push the farthest pair outward along the
        // principal direction of the candidate cloud (twice, in case the
        // first round uncovered a longer axis)
        LinearMaximizer mx(A, xstar, opts);
        for (int round = 0; round < 2; ++round) {
            auto [i, j] = farthest_pair(cands);
            Vector v = cands[i] - cands[j];
            if (v.norm() < 1e-15) break;
            v /= v.norm();
            Rng sub = rng.fork(3000 + round);
            cands.push_back(mx.widen(cands[i], v, sigma - tol_val, R, sub));
            cands.push_back(mx.widen(cands[j], -v, sigma - tol_val, R, sub));
            double d2 = pairwise_diameter(cands);
            if (d2 <= diam * (1.0 + 1e-9)) { diam = d2; break; }
            diam = d2;
        }
    }
    out.diameter = diam;
    out.representatives = cluster_representatives(cands, opts.tol.tol_cluster(A.bound_hint));
    out.is_singleton = (diam <= tol_diam) && !out.truncated;
    return out;
}

ArgmaxSet subdifferential(const HSet& A, const Vector& xstar, const SupportOptions& opts) {
    require_dim(xstar, A.dim(), "subdifferential");
    if (xstar.isZero(0.0)) {
        ArgmaxSet whole;
        whole.whole_hull = true;
        whole.sigma = 0.0;
        return whole;
    }
    return argmax_set(A, xstar, opts);
}

DifferentiabilityResult is_differentiable_at(const HSet& A, const Vector& xstar,
                                             const SupportOptions& opts) {
    DifferentiabilityResult res;
    res.argmax = argmax_set(A, xstar, opts);
    if (res.argmax.truncated) {
        res.verdict = DiffVerdict::Indeterminate;
        return res;
    }
    if (res.argmax.is_singleton) {
        res.verdict = DiffVerdict::Differentiable;
        res.gradient = res.argmax.representatives.front();
    } else {
        res.verdict = DiffVerdict::NotDifferentiable;
    }
    return res;
}

Vector gradient_fd(const HSet& A, const Vector& xstar, double h, const SupportOptions& opts) {
    require_dim(xstar, A.dim(), "gradient_fd");
    if (!(h > 0.0)) throw std::invalid_argument("gradient_fd: h must be positive");
    const int p = A.dim();
    if (A.cone && A.cone->dual_margin(-xstar) <= h * p)
        throw std::invalid_argument("gradient_fd: xstar too close to the domain boundary");
    Vector g(p);
    for (int i = 0; i < p; ++i) {
        Vector e = Vector::Zero(p);
        e[i] = h;
        SupportOptions o = opts;
        o.seed = opts.seed + 17u * static_cast<std::uint64_t>(i) + 1u;
        SupportEval up = support_value(A, xstar + e, o);
        o.seed += 7919u;
        SupportEval dn = support_value(A, xstar - e, o);
        if (up.status == SupportStatus::PlusInfinity || dn.status == SupportStatus::PlusInfinity)
            throw std::runtime_error("gradient_fd: probe left the finite domain");
        g[i] = (up.value - dn.value) / (2.0 * h);
    }
    return g;
}

CompactnessVerdict subdifferential_compactness_probe(const HSet& A, const Vector& xstar,
                                                     const SupportOptions& opts) {
    require_dim(xstar, A.dim(), "compactness probe");
    const double m = domain_margin(A, xstar);
    if (m < -kBoundaryEps)
        throw std::invalid_argument("compactness probe: support value is +infinity");

    const int p = A.dim();
    Rng rng(opts.seed);
    LinearMaximizer mx(A, xstar, opts);
    const int rounds = 5;
    std::vector<double> extents;
    for (int k = 0; k < rounds; ++k) {
        const double R = A.bound_hint * std::pow(2.0, k);
        Rng sub = rng.fork(4000 + k);
        SearchResult sr = mx.run(R, sub);
        // radius-scaled slack: far tails of a ray-shaped near-argmax set only
        // come within this tolerance once the box is large enough
        const double slack =
            4.0 * std::max(1.0, A.bound_hint) * std::max(1.0, xstar.norm()) / R;
        const double floor_val = sr.best - slack;
        std::vector<Vector> pts;
        for (const auto& e : sr.endpoints)
            if (xstar.dot(e) >= floor_val) pts.push_back(e);
        if (pts.empty()) pts.push_back(A.witness);
        // widen along coordinate axes to measure the slab extent
        std::vector<Vector> measured = pts;
        for (int d = 0; d < p; ++d) {
            Vector dir = Vector::Zero(p);
            dir[d] = 1.0;
            Rng w = sub.fork(17 + d);
            measured.push_back(mx.widen(pts.front(), dir, floor_val, R, w));
            measured.push_back(mx.widen(pts.front(), -dir, floor_val, R, w));
        }
        extents.push_back(pairwise_diameter(measured));
    }
    int grow = 0, flat = 0;
    for (int k = 0; k + 1 < rounds; ++k) {
        if (extents[k + 1] >= 1.5 * std::max(extents[k], 1e-9 * A.bound_hint)) ++grow;
        if (extents[k + 1] <= 1.1 * extents[k] + 1e-9 * A.bound_hint) ++flat;
    }
    if (grow >= 3 && extents.back() >= 0.05 * A.bound_hint * std::pow(2.0, rounds - 1))
        return CompactnessVerdict::Unbounded;
    if (flat >= 3 && extents.back() <= std::max(2.0 * extents.front(), 0.5 * A.bound_hint))
        return CompactnessVerdict::Compact;
    return CompactnessVerdict::Indeterminate;
}

std::vector<Vector> dual_interior_grid(const Cone& K, int n, double scale) {
    if (n <= 0) return {};
    const int p = K.dim();
    std::vector<Vector> grid;
    grid.reserve(n);
    auto push = [&](const Vector& y) {
        if (static_cast<int>(grid.size()) < n) grid.push_back(-y * scale);
    };
    switch (K.kind()) {
        case ConeKind::Orthant: {
            int m = 1;
            while (std::pow(m, p) < n) ++m;
            std::vector<int> idx(p, 0);
            while (static_cast<int>(grid.size()) < n) {
                Vector y(p);
                for (int d = 0; d < p; ++d)
                    y[d] = 0.25 + 1.75 * (m == 1 ? 0.5 : static_cast<double>(idx[d]) / (m - 1));
                push(y);
                int d = p - 1;
                while (d >= 0 && ++idx[d] == m) idx[d--] = 0;
                if (d < 0) break;
            }
            break;
        }
        case ConeKind::Lorentz: {
            // rings of directions strictly inside the self-dual cone
            int rings = std::max(1, static_cast<int>(std::ceil(std::sqrt(double(n) / 8.0))));
            int per_ring = std::max(1, (n + rings) / (rings + 1));
            push(Vector::Unit(p, p - 1)); // axis
            for (int r = 1; r <= rings && static_cast<int>(grid.size()) < n; ++r) {
                double rho = 0.85 * r / rings;
                for (int j = 0; j < per_ring * 2 && static_cast<int>(grid.size()) < n; ++j) {
                    Vector y = Vector::Zero(p);
                    if (p == 3) {
                        double th = 2.0 * M_PI * j / (per_ring * 2);
                        y << rho * std::cos(th), rho * std::sin(th), 1.0;
                    } else {
                        y[j % (p - 1)] = rho * ((j / (p - 1)) % 2 == 0 ? 1.0 : -1.0);
                        y[p - 1] = 1.0;
                    }
                    push(y);
                }
            }
            break;
        }
        case ConeKind::Polyhedral: {
            // positive lattice combinations of the halfspace normals
            const auto& ns = K.normals();
            const int m = static_cast<int>(ns.size());
            Vector base = Vector::Zero(p);
            for (const auto& nv : ns) base += nv / nv.norm();
            push(base);
            int level = 1;
            while (static_cast<int>(grid.size()) < n && level < 64) {
                for (int i = 0; i < m && static_cast<int>(grid.size()) < n; ++i)
                    for (int w = 1; w <= level && static_cast<int>(grid.size()) < n; ++w) {
                        Vector y = base + (0.6 * w) * ns[i] / ns[i].norm();
                        for (int i2 = i + 1; i2 < m && static_cast<int>(grid.size()) < n; ++i2) {
                            push(y);
                            y += 0.3 * level * ns[i2] / ns[i2].norm();
                        }
                        push(y);
                    }
                ++level;
            }
            break;
        }
    }
    // every point must sit strictly inside -K#
    for (const auto& g : grid)
        if (!K.strict_dual_contains(-g))
            throw std::logic_error("dual_interior_grid produced a non-interior point");
    return grid;
}

} // namespace suppdiff
