// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/conditions.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace suppdiff {

std::string to_string(ConditionVerdict v) {
    return v == ConditionVerdict::HoldsOnSample ? "holds_on_sample" : "violated";
}

Json ConditionReport::to_json() const {
    Json j;
    j["condition_id"] = condition_id;
    j["verdict"] = suppdiff::to_string(verdict);
    Json ws = Json::array();
    for (const auto& w : witnesses) {
        Json e;
        Json pts = Json::array();
        for (const auto& p : w.points) pts.push_back(suppdiff::to_json(p));
        e["points"] = pts;
        e["lambda"] = w.lambda;
        ws.push_back(e);
    }
    j["witnesses"] = ws;
    j["sample_count"] = sample_count;
    j["seed"] = seed;
    if (unresolved > 0) j["unresolved"] = unresolved;
    return j;
}

namespace {

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

void sort_witnesses(std::vector<ConditionWitness>& ws) {
    std::sort(ws.begin(), ws.end(), [](const ConditionWitness& a, const ConditionWitness& b) {
        for (std::size_t i = 0; i < std::min(a.points.size(), b.points.size()); ++i) {
            if (lex_less(a.points[i], b.points[i])) return true;
            if (lex_less(b.points[i], a.points[i])) return false;
        }
        return a.lambda < b.lambda;
    });
}

std::vector<Vector> probe_directions(int p, Rng& rng, int n_rng) {
    std::vector<Vector> dirs;
    for (int i = 0; i < p; ++i) {
        Vector e = Vector::Zero(p);
        e[i] = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
    }
    for (int i = 0; i < p; ++i) {
        Vector d = Vector::Zero(p);
        d[i] = 1.0;
        d[(i + 1) % p] = -1.0;
        d /= d.norm();
        dirs.push_back(d);
        dirs.push_back(-d);
    }
    for (int k = 0; k < n_rng; ++k) dirs.push_back(rng.unit_vector(p));
    return dirs;
}

// positive interior probe: some shrinking-ball level has all its (K-visible)
// probe points inside A
bool interior_probe(const HSet& A, const Vector& x, bool rel_K, std::uint64_t seed) {
    if (!A.member(x)) return false;
    const Cone* K = A.cone ? &*A.cone : nullptr;
    if (rel_K && K && !K->contains(x)) return false;
    Rng rng(seed);
    const int p = A.dim();
    for (double frac : {1e-2, 1e-3, 1e-4}) {
        const double delta = frac * A.bound_hint;
        Rng sub = rng.fork(static_cast<std::uint64_t>(1.0 / frac));
        auto dirs = probe_directions(p, sub, 8);
        bool all_inside = true;
        for (const auto& d : dirs) {
            Vector y = x + delta * d;
            if (rel_K && K && !K->contains(y)) continue; // only K matters rel K
            if (!A.member(y)) {
                all_inside = false;
                break;
            }
        }
        if (all_inside) return true;
    }
    return false;
}

// negative certification: a ray along which membership fails arbitrarily
// close to x (three nested scales), staying inside K when rel_K is set
bool certify_not_interior(const HSet& A, const Vector& x, bool rel_K, std::uint64_t seed) {
    if (!A.member(x)) return true; // not a member, certainly not interior
    const Cone* K = A.cone ? &*A.cone : nullptr;
    Rng rng(seed);
    const int p = A.dim();
    std::vector<Vector> dirs = probe_directions(p, rng, 16);
    if (K) {
        dirs.push_back(-K->interior_point());
        for (const auto& g : K->generators()) {
            dirs.push_back(-g);
            dirs.push_back(g);
        }
    }
    const double base = 1e-9 * A.bound_hint;
    for (const auto& d : dirs) {
        bool cert = true;
        for (double tau : {base, 10.0 * base, 100.0 * base}) {
            Vector y = x + tau * d;
            if (rel_K && K && !K->contains(y)) {
                cert = false;
                break;
            }
            if (A.member(y)) {
                cert = false;
                break;
            }
        }
        if (cert) return true;
    }
    return false;
}

std::vector<Vector> cone_direction_grid(const Cone& K, int n, Rng& rng) {
    std::vector<Vector> dirs;
    for (const auto& g : K.generators()) dirs.push_back(g);
    dirs.push_back(K.interior_point() / K.interior_point().norm());
    // pairwise mixes of generators
    const auto& gs = K.generators();
    for (std::size_t i = 0; i < gs.size() && static_cast<int>(dirs.size()) < n; ++i)
        for (std::size_t j = i + 1; j < gs.size() && static_cast<int>(dirs.size()) < n; ++j) {
            Vector d = gs[i] + gs[j];
            dirs.push_back(d / d.norm());
        }
    while (static_cast<int>(dirs.size()) < n) dirs.push_back(K.sample_direction(rng));
    dirs.resize(n);
    return dirs;
}

// k in K with member(y - k), searched over a direction grid and geometric
// steps down to a deep resolution floor
std::optional<Vector> find_translation(const HSet& A, const Vector& y,
                                       const std::vector<Vector>& dirs) {
    const double hi = 2.0 * A.bound_hint;
    const double lo = 1e-9 * A.bound_hint;
    for (const auto& d : dirs)
        for (double s = hi; s >= lo; s *= 0.5)
            if (A.member(y - s * d)) return (s * d).eval();
    return std::nullopt;
}

// minimal member of A along each extreme ray of K (structural boundary
// candidates; exact midpoint witnesses live here for polyhedral fixtures)
std::vector<Vector> ray_min_points(const HSet& A) {
    std::vector<Vector> out;
    if (!A.cone) return out;
    for (const auto& g : A.cone->generators()) {
        double t_hit = -1.0;
        for (double t = 0.125; t <= 8.0 * A.bound_hint; t *= 2.0)
            if (A.member(t * g)) {
                t_hit = t;
                break;
            }
        if (t_hit < 0.0) continue; // ray misses A
        double lo = 0.0, hi = t_hit;
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (lo + hi);
            if (A.member(mid * g)) hi = mid;
            else lo = mid;
        }
        out.push_back(hi * g);
    }
    return out;
}

Vector deep_anchor(const HSet& A, Rng& rng, double scale) {
    if (A.cone && A.satisfies_h) {
        Vector a = A.witness + scale * A.bound_hint * (0.1 + 0.4 * rng.uniform()) *
                                   A.cone->sample_interior_direction(rng);
        if (A.member(a)) return a;
    }
    return A.witness;
}

std::vector<Vector> boundary_by_rays(const HSet& A, int count, Rng& rng) {
    std::vector<Vector> out;
    const int p = A.dim();
    std::vector<Vector> structured;
    if (A.cone) {
        structured.push_back(-A.cone->interior_point());
        for (const auto& g : A.cone->generators()) structured.push_back(-g);
    }
    for (int i = 0; i < p; ++i) {
        Vector e = Vector::Zero(p);
        e[i] = 1.0;
        structured.push_back(-e);
    }
    int tries = 0;
    while (static_cast<int>(out.size()) < count && tries++ < 8 * count) {
        Vector anchor = deep_anchor(A, rng, 1.0);
        Vector d = (static_cast<std::size_t>(tries) <= structured.size())
                       ? structured[tries - 1]
                       : rng.unit_vector(p);
        if (!A.member(anchor)) continue;
        // march outward until membership fails
        double T = -1.0;
        for (double t = 0.25 * A.bound_hint; t <= 32.0 * A.bound_hint; t *= 2.0)
            if (!A.member(anchor + t * d)) {
                T = t;
                break;
            }
        if (T < 0.0) continue; // recession direction
        double lo = 0.0, hi = T;
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            if (A.member(anchor + mid * d)) lo = mid;
            else hi = mid;
        }
        out.push_back(anchor + lo * d);
    }
    return out;
}

std::vector<Vector> argmax_extremes(const HSet& A, const SupportOptions& support,
                                    std::uint64_t seed) {
    std::vector<Vector> out;
    if (!A.cone) return out;
    SupportOptions so = support;
    so.seed = seed;
    so.starts = std::max(8, support.starts / 2);
    for (const auto& xs : dual_interior_grid(*A.cone, 4, 1.0)) {
        try {
            ArgmaxSet am = argmax_set(A, xs, so);
            for (const auto& r : am.representatives) out.push_back(r);
        } catch (const std::exception&) {
            // probe outside the strict dual: skip
        }
    }
    return out;
}

struct Pools {
    std::vector<Vector> members;
    std::vector<Vector> boundary;
};

Pools build_pools(const HSet& A, const SamplerConfig& cfg, bool with_argmax) {
    Pools P;
    Rng rng(cfg.seed);
    Rng mr = rng.fork(11);
    P.members = sample_members(A, std::max(cfg.samples / 2, 32), mr.next_u64());
    Rng br = rng.fork(12);
    P.boundary = boundary_by_rays(A, std::max(cfg.samples / 4, 24), br);
    for (auto& x : ray_min_points(A)) P.boundary.push_back(x);
    if (with_argmax) {
        Rng ar = rng.fork(13);
        for (auto& x : argmax_extremes(A, cfg.support, ar.next_u64()))
            P.boundary.push_back(x);
    }
    return P;
}

enum class Conclusion { IntAbs, IntRelK, NotBoundary, TranslateExists, NotInE, NotInS };

struct SPred {
    std::vector<Vector> grid;
    std::vector<double> sigma;
    Tolerances tol;

    bool contains(const HSet& A, const Vector& x) const {
        if (!A.member(x)) return false;
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (grid[j].dot(x) >= sigma[j] - tol.tol_val(sigma[j])) return true;
        return false;
    }
};

} // namespace

bool check_interior_rel_K(const HSet& A, const Vector& x, const SamplerConfig& cfg) {
    require_dim(x, A.dim(), "check_interior_rel_K");
    return interior_probe(A, x, /*rel_K=*/true, cfg.seed);
}

std::vector<Vector> sample_members(const HSet& A, int count, std::uint64_t seed) {
    std::vector<Vector> out;
    Rng rng(seed);
    out.push_back(A.witness);
    const int p = A.dim();
    int tries = 0;
    while (static_cast<int>(out.size()) < count && tries++ < 20 * count) {
        Vector x;
        if (A.cone && A.satisfies_h && rng.uniform() < 0.6) {
            // witness + K is always inside an (H)-stable set
            x = A.witness + A.cone->sample_point(rng, 0.5 * A.bound_hint);
        } else if (A.cone) {
            x = A.cone->sample_point(rng, A.bound_hint);
        } else {
            x = Vector(p);
            for (int i = 0; i < p; ++i) x[i] = rng.uniform(-A.bound_hint, A.bound_hint);
        }
        if (A.member(x)) out.push_back(x);
    }
    return out;
}

std::vector<Vector> sample_boundary(const HSet& A, int count, std::uint64_t seed,
                                    const SupportOptions& support) {
    Rng rng(seed);
    auto out = boundary_by_rays(A, count, rng);
    for (auto& x : ray_min_points(A)) out.push_back(x);
    Rng ar = rng.fork(99);
    for (auto& x : argmax_extremes(A, support, ar.next_u64())) out.push_back(x);
    return out;
}

ConditionReport check_condition(const HSet& A, const std::string& condition_id,
                                const SamplerConfig& cfg) {
    ConditionReport rep;
    rep.condition_id = condition_id;
    rep.seed = cfg.seed;
    Rng rng(cfg.seed);

    const double sep = cfg.pair_separation_frac * A.bound_hint;
    const std::size_t max_witnesses = 8;

    auto record = [&](std::vector<Vector> pts, double lam) {
        rep.verdict = ConditionVerdict::Violated;
        if (rep.witnesses.size() < max_witnesses)
            rep.witnesses.push_back({std::move(pts), lam});
    };

    // ---- translation-style conditions: quantify over (a, k) ---------------
    if (condition_id == "H" || condition_id == "fp-ssc" || condition_id == "r-s") {
        const Cone& K = A.K();
        Pools P = build_pools(A, cfg, /*with_argmax=*/false);
        std::vector<Vector> apool = P.members;
        for (auto& b : P.boundary) apool.push_back(b);
        // k candidates: generators and sampled directions at several scales
        std::vector<std::pair<Vector, double>> ks;
        for (const auto& g : K.generators())
            for (double f : {0.02, 0.1, 0.4}) ks.emplace_back(g, f * A.bound_hint);
        Rng kr = rng.fork(21);
        while (ks.size() < 64)
            ks.emplace_back(K.sample_direction(kr),
                            kr.log_uniform(0.01, 0.5) * A.bound_hint);

        Rng pick = rng.fork(22);
        int n = 0;
        auto eval_pair = [&](const Vector& a, const Vector& k) {
            ++n;
            Vector q = a + k;
            if (condition_id == "H") {
                bool ok = A.member(q) && K.contains(a) && a.norm() > 0.0;
                if (!ok) record({a, k}, 0.0);
                return;
            }
            const bool rel = condition_id == "fp-ssc";
            Rng pr = pick.fork(static_cast<std::uint64_t>(n));
            if (interior_probe(A, q, rel, pr.next_u64())) return;
            Rng cr = pick.fork(static_cast<std::uint64_t>(n) + 7777);
            if (certify_not_interior(A, q, rel, cr.next_u64())) record({a, k}, 0.0);
            else ++rep.unresolved;
        };
        for (const auto& w : cfg.targeted)
            if (w.points.size() == 2) eval_pair(w.points[0], w.points[1]);
        // structural sweep: every boundary candidate against every k candidate
        // would be quadratic; take the witness and ray points against all ks,
        // then random pairs up to the requested sample count
        std::vector<Vector> anchors = ray_min_points(A);
        anchors.push_back(A.witness);
        for (const auto& a : anchors)
            for (const auto& [d, s] : ks) eval_pair(a, (s * d).eval());
        while (n < cfg.samples) {
            const Vector& a = apool[pick.index(apool.size())];
            const auto& [d, s] = ks[pick.index(ks.size())];
            eval_pair(a, (s * d).eval());
        }
        rep.sample_count = static_cast<std::size_t>(n);
        sort_witnesses(rep.witnesses);
        return rep;
    }

    // ---- midpoint-style conditions ----------------------------------------
    Conclusion concl;
    enum class PairPool { Members, MembersIntK, Boundary, ESet, SSet };
    PairPool pool_kind;
    if (condition_id == "r-sa") {
        concl = Conclusion::IntAbs;
        pool_kind = PairPool::MembersIntK;
    } else if (condition_id == "r-sas") {
        concl = Conclusion::IntRelK;
        pool_kind = PairPool::Members;
    } else if (condition_id == "r-sb") {
        concl = Conclusion::NotBoundary;
        pool_kind = PairPool::Boundary;
    } else if (condition_id == "rs1a") {
        concl = Conclusion::IntAbs;
        pool_kind = PairPool::Members;
    } else if (condition_id == "r-s1a") {
        concl = Conclusion::NotBoundary;
        pool_kind = PairPool::Boundary;
    } else if (condition_id == "rs2") {
        concl = Conclusion::TranslateExists;
        pool_kind = PairPool::Members;
    } else if (condition_id == "rs2c") {
        concl = Conclusion::NotInE;
        pool_kind = PairPool::ESet;
    } else if (condition_id == "fps-z" || condition_id == "fps") {
        concl = Conclusion::NotInS;
        pool_kind = PairPool::SSet;
    } else {
        throw std::invalid_argument("unknown condition id '" + condition_id + "'");
    }

    const Cone* K = A.cone ? &*A.cone : nullptr;
    Pools P = build_pools(A, cfg, /*with_argmax=*/true);

    Rng dg = rng.fork(31);
    std::vector<Vector> dirs;
    if (K) dirs = cone_direction_grid(*K, cfg.direction_grid, dg);

    SPred spred;
    spred.tol = cfg.tol;
    if (concl == Conclusion::NotInS) {
        if (!K) throw std::invalid_argument(condition_id + ": fixture carries no cone");
        spred.grid = dual_interior_grid(*K, 12, 1.0);
        SupportOptions so = cfg.support;
        for (std::size_t j = 0; j < spred.grid.size(); ++j) {
            so.seed = cfg.seed + 1013 * (j + 1);
            spred.sigma.push_back(support_value(A, spred.grid[j], so).value);
        }
    }

    // assemble the pair pool
    std::vector<Vector> pts;
    switch (pool_kind) {
        case PairPool::Members:
            pts = P.members;
            for (auto& b : P.boundary) pts.push_back(b);
            break;
        case PairPool::MembersIntK: {
            const double floor = 1.5e-2 * A.bound_hint;
            for (auto& x : P.members)
                if (K && K->margin(x) > floor) pts.push_back(x);
            for (auto& x : P.boundary)
                if (K && K->margin(x) > floor) pts.push_back(x);
            break;
        }
        case PairPool::Boundary:
            pts = P.boundary;
            break;
        case PairPool::ESet:
            for (auto& x : P.boundary)
                if (!find_translation(A, x, dirs)) pts.push_back(x);
            break;
        case PairPool::SSet: {
            Rng ar = rng.fork(32);
            pts = argmax_extremes(A, cfg.support, ar.next_u64());
            for (auto& x : P.boundary)
                if (spred.contains(A, x)) pts.push_back(x);
            break;
        }
    }
    if (pts.size() < 2) {
        throw std::runtime_error("check_condition(" + condition_id +
                                 "): sampler failed to populate the quantifier domain");
    }

    Rng pick = rng.fork(41);
    int n = 0;
    auto eval_triple = [&](const Vector& x, const Vector& xp, double lam) {
        ++n;
        if ((x - xp).norm() < sep) return;
        Vector mid = lam * x + (1.0 - lam) * xp;
        Rng pr = pick.fork(static_cast<std::uint64_t>(n));
        switch (concl) {
            case Conclusion::IntAbs:
            case Conclusion::IntRelK: {
                bool rel = concl == Conclusion::IntRelK;
                if (interior_probe(A, mid, rel, pr.next_u64())) return;
                Rng cr = pick.fork(static_cast<std::uint64_t>(n) + 7777);
                if (certify_not_interior(A, mid, rel, cr.next_u64())) record({x, xp}, lam);
                else ++rep.unresolved;
                return;
            }
            case Conclusion::NotBoundary: {
                if (!A.member(mid)) return; // outside the closed set: not boundary
                Rng cr = pick.fork(static_cast<std::uint64_t>(n) + 7777);
                if (certify_not_interior(A, mid, false, cr.next_u64())) record({x, xp}, lam);
                return;
            }
            case Conclusion::TranslateExists: {
                if (!find_translation(A, mid, dirs)) record({x, xp}, lam);
                return;
            }
            case Conclusion::NotInE: {
                if (A.member(mid) && !find_translation(A, mid, dirs)) record({x, xp}, lam);
                return;
            }
            case Conclusion::NotInS: {
                if (spred.contains(A, mid)) record({x, xp}, lam);
                return;
            }
        }
    };

    for (const auto& w : cfg.targeted)
        if (w.points.size() == 2) eval_triple(w.points[0], w.points[1], w.lambda);
    // deterministic midpoint sweep over the structural candidates first
    const std::size_t head = std::min<std::size_t>(pts.size(), 14);
    for (std::size_t i = 0; i < head; ++i)
        for (std::size_t j = i + 1; j < head; ++j) eval_triple(pts[i], pts[j], 0.5);
    while (n < cfg.samples) {
        const Vector& x = pts[pick.index(pts.size())];
        const Vector& xp = pts[pick.index(pts.size())];
        double lam = (n % 4 == 0) ? 0.5 : pick.uniform();
        eval_triple(x, xp, lam);
    }
    rep.sample_count = static_cast<std::size_t>(n);
    sort_witnesses(rep.witnesses);
    return rep;
}

namespace {

ConditionReport convexity_midpoint_check(const HSet& A, const SamplerConfig& cfg) {
    // membership of midpoints of member pairs; exact evaluations
    ConditionReport rep;
    rep.condition_id = "convexity";
    rep.seed = cfg.seed;
    Rng rng(cfg.seed);
    auto members = sample_members(A, std::max(cfg.samples / 2, 64), rng.fork(1).next_u64());
    Rng br = rng.fork(2);
    for (auto& b : boundary_by_rays(A, std::max(cfg.samples / 8, 16), br))
        members.push_back(b);
    Rng pick = rng.fork(3);
    int n = 0;
    while (n < cfg.samples) {
        const Vector& x = members[pick.index(members.size())];
        const Vector& y = members[pick.index(members.size())];
        double lam = (n % 4 == 0) ? 0.5 : pick.uniform();
        ++n;
        if ((x - y).norm() < 1e-12) continue;
        Vector mid = lam * x + (1.0 - lam) * y;
        if (!A.member(mid)) {
            rep.verdict = ConditionVerdict::Violated;
            if (rep.witnesses.size() < 8) rep.witnesses.push_back({{x, y}, lam});
        }
    }
    rep.sample_count = static_cast<std::size_t>(n);
    sort_witnesses(rep.witnesses);
    return rep;
}

struct GridClassification {
    int total = 0;
    int differentiable = 0;
    int indeterminate = 0;
    std::vector<Vector> nondiff_points;
    std::vector<double> nondiff_diameters;
};

GridClassification classify_grid(const HSet& A, const std::vector<Vector>& grid,
                                 const SamplerConfig& cfg) {
    GridClassification gc;
    gc.total = static_cast<int>(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SupportOptions so = cfg.support;
        so.seed = cfg.seed + 131 * (i + 1);
        DifferentiabilityResult r = is_differentiable_at(A, grid[i], so);
        switch (r.verdict) {
            case DiffVerdict::Differentiable: ++gc.differentiable; break;
            case DiffVerdict::Indeterminate: ++gc.indeterminate; break;
            case DiffVerdict::NotDifferentiable:
                gc.nondiff_points.push_back(grid[i]);
                gc.nondiff_diameters.push_back(r.argmax.diameter);
                break;
        }
    }
    return gc;
}

Json grid_json(const GridClassification& gc) {
    Json j;
    j["grid_points"] = gc.total;
    j["differentiable"] = gc.differentiable;
    j["indeterminate"] = gc.indeterminate;
    Json nd = Json::array();
    for (std::size_t i = 0; i < gc.nondiff_points.size(); ++i) {
        Json e;
        e["xstar"] = to_json(gc.nondiff_points[i]);
        e["argmax_diameter"] = gc.nondiff_diameters[i];
        nd.push_back(e);
    }
    j["not_differentiable"] = nd;
    return j;
}

} // namespace

HarnessReport harness_fact14(const HSet& A, const std::vector<Vector>& dual_grid,
                             const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "fact14";
    rep.details["set"] = A.label;

    ConditionReport h = check_condition(A, "H", cfg);
    rep.details["H"] = h.to_json();
    ConditionReport fpssc = check_condition(A, "fp-ssc", cfg);
    rep.details["fp-ssc"] = fpssc.to_json();
    if (h.verdict == ConditionVerdict::Violated ||
        fpssc.verdict == ConditionVerdict::Violated) {
        rep.details["status"] = "precondition_failed";
        return rep;
    }

    GridClassification gc = classify_grid(A, dual_grid, cfg);
    rep.details["differentiability"] = grid_json(gc);
    if (gc.indeterminate > 0) {
        rep.indeterminate = true;
        rep.details["status"] = "indeterminate: truncated argmax on the grid";
        return rep;
    }

    ConditionReport rsa = check_condition(A, "r-sa", cfg);
    rep.details["r-sa"] = rsa.to_json();

    const bool all_diff = gc.differentiable == gc.total;
    if (all_diff) {
        ConditionReport cvx = convexity_midpoint_check(A, cfg);
        rep.details["convexity"] = cvx.to_json();
        if (cvx.verdict == ConditionVerdict::Violated ||
            rsa.verdict == ConditionVerdict::Violated) {
            rep.alarm = true;
            rep.details["status"] =
                "ALARM: differentiable on the grid but convexity/midpoint conclusion fails";
            return rep;
        }
        rep.details["status"] = "pass";
    } else {
        rep.details["status"] = "hypothesis path: differentiability fails";
    }

    if (A.dim() == 2) {
        // converse direction: midpoint interiority forces grid smoothness
        Json conv;
        conv["r-sa_holds"] = rsa.verdict == ConditionVerdict::HoldsOnSample;
        if (rsa.verdict == ConditionVerdict::HoldsOnSample && !all_diff) {
            rep.alarm = true;
            conv["status"] = "ALARM: midpoint interiority holds but grid finds kinks";
        } else {
            conv["status"] = "consistent";
        }
        ConditionReport cvx2 = convexity_midpoint_check(A, cfg);
        conv["convexity"] = cvx2.to_json();
        if (rsa.verdict == ConditionVerdict::HoldsOnSample &&
            cvx2.verdict == ConditionVerdict::Violated) {
            rep.alarm = true;
            conv["status"] = "ALARM: midpoint interiority holds but convexity fails";
        }
        rep.details["converse_2d"] = conv;
    }
    return rep;
}

HarnessReport harness_prop_suf(const HSet& A, const std::vector<Vector>& dual_grid,
                               const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "prop-suf";
    rep.details["set"] = A.label;

    ConditionReport rsas = check_condition(A, "r-sas", cfg);
    rep.details["r-sas"] = rsas.to_json();
    if (rsas.verdict == ConditionVerdict::Violated) {
        rep.details["status"] = "precondition_failed";
        return rep;
    }

    ConditionReport cvx = convexity_midpoint_check(A, cfg);
    rep.details["convexity"] = cvx.to_json();
    GridClassification gc = classify_grid(A, dual_grid, cfg);
    rep.details["differentiability"] = grid_json(gc);
    ConditionReport fpssc = check_condition(A, "fp-ssc", cfg);
    rep.details["fp-ssc"] = fpssc.to_json();

    if (gc.indeterminate > 0) {
        rep.indeterminate = true;
        rep.details["status"] = "indeterminate: truncated argmax on the grid";
        return rep;
    }
    if (cvx.verdict == ConditionVerdict::Violated || gc.differentiable != gc.total ||
        fpssc.verdict == ConditionVerdict::Violated) {
        rep.alarm = true;
        rep.details["status"] = "ALARM: midpoint interiority holds but a conclusion fails";
    } else {
        rep.details["status"] = "pass";
    }
    return rep;
}

SESets sample_S_and_E_sets(const HSet& C, const std::vector<Vector>& dual_grid,
                           const SamplerConfig& cfg) {
    SESets out;
    const Cone& K = C.K();
    Rng rng(cfg.seed);
    Rng dg = rng.fork(51);
    auto dirs = cone_direction_grid(K, cfg.direction_grid, dg);

    // S: argmax representatives over the dual grid
    for (std::size_t j = 0; j < dual_grid.size(); ++j) {
        SupportOptions so = cfg.support;
        so.seed = cfg.seed + 977 * (j + 1);
        ArgmaxSet am = argmax_set(C, dual_grid[j], so);
        for (const auto& r : am.representatives) out.S_samples.push_back(r);
    }

    // E: boundary samples with no inward K-translation
    Rng br = rng.fork(52);
    auto bnd = boundary_by_rays(C, std::max(cfg.samples / 4, 32), br);
    for (auto& x : ray_min_points(C)) bnd.push_back(x);
    for (const auto& x : bnd)
        if (!find_translation(C, x, dirs)) out.E_samples.push_back(x);

    // sampled inclusions
    for (const auto& s : out.S_samples)
        if (find_translation(C, s, dirs)) out.S_in_E = false;
    Rng cr = rng.fork(53);
    int n = 0;
    for (const auto& e : out.E_samples) {
        Rng sub = cr.fork(static_cast<std::uint64_t>(++n));
        if (!C.member(e) || !certify_not_interior(C, e, false, sub.next_u64()))
            out.E_in_boundary = false;
    }
    // E-points witnessing failed translations double as rs2 violations
    for (std::size_t i = 0; i + 1 < out.E_samples.size() && out.rs2_violations.size() < 4; ++i)
        out.rs2_violations.push_back(out.E_samples[i]);
    return out;
}

HarnessReport harness_rem1(const HSet& C, const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "rem1-chain";
    rep.details["set"] = C.label;
    if (!C.declared_convex)
        throw std::invalid_argument("harness_rem1: fixture is not declared convex");

    std::map<std::string, ConditionReport> reports;
    for (const char* id : {"r-s1a", "rs2c", "rs2", "fps-z"})
        reports.emplace(id, check_condition(C, id, cfg));
    for (const auto& [id, r] : reports) rep.details[id] = r.to_json();

    auto holds = [&](const char* id) {
        return reports.at(id).verdict == ConditionVerdict::HoldsOnSample;
    };
    Json chain = Json::array();
    auto audit = [&](const char* premise, const char* conclusion) {
        bool contradicted = holds(premise) && !holds(conclusion);
        Json e;
        e["implication"] = std::string(premise) + " => " + conclusion;
        e["contradicted"] = contradicted;
        chain.push_back(e);
        if (contradicted) rep.alarm = true;
    };
    audit("r-s1a", "rs2c");
    audit("rs2c", "rs2");
    audit("rs2", "rs2c");
    audit("rs2", "fps-z");
    rep.details["chain"] = chain;
    rep.details["status"] = rep.alarm ? "ALARM: implication chain contradicted" : "consistent";
    return rep;
}

} // namespace suppdiff
