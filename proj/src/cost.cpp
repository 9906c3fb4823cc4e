// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/cost.hpp>

#include <algorithm>
#include <cmath>

namespace suppdiff {

Json AxiomReport::to_json() const {
    Json j;
    j["axiom"] = axiom;
    j["verdict"] = suppdiff::to_string(verdict);
    Json ws = Json::array();
    for (const auto& w : witnesses) {
        Json e;
        Json pts = Json::array();
        for (const auto& p : w.points) pts.push_back(suppdiff::to_json(p));
        e["points"] = pts;
        ws.push_back(e);
    }
    j["witnesses"] = ws;
    j["sample_count"] = sample_count;
    j["seed"] = seed;
    return j;
}

Json ShephardReport::to_json() const {
    Json j;
    j["verdict"] = suppdiff::to_string(verdict);
    j["fd_gradient"] = suppdiff::to_json(fd_gradient);
    Json reps = Json::array();
    for (const auto& r : demand.representatives) reps.push_back(suppdiff::to_json(r));
    j["demand"] = reps;
    j["demand_diameter"] = demand.diameter;
    j["max_rel_err"] = max_rel_err;
    return j;
}

double cost_value(const ProductionFn& F, const Vector& xstar, double gamma,
                  const Vector& witness, const SupportOptions& opts) {
    require_dim(xstar, F.dim, "cost_value");
    if (!(xstar.array() > 0.0).all())
        throw std::invalid_argument("cost_value: prices must be strictly positive");
    HSet L = level_set(F, gamma, witness);
    SupportEval s = support_value(L, -xstar, opts);
    if (s.status == SupportStatus::PlusInfinity)
        throw std::runtime_error("cost_value: support value infinite (infeasible level)");
    return -s.value;
}

ShephardReport shephard_check(const ProductionFn& F, const Vector& xstar, double gamma,
                              const Vector& witness, double h, const SupportOptions& opts) {
    require_dim(xstar, F.dim, "shephard_check");
    if (!(xstar.array() > 0.0).all())
        throw std::invalid_argument("shephard_check: prices must be strictly positive");
    if (h <= 0.0) h = 1e-5 * xstar.norm();

    HSet L = level_set(F, gamma, witness);
    ShephardReport rep;
    DifferentiabilityResult dr = is_differentiable_at(L, (-xstar).eval(), opts);
    rep.verdict = dr.verdict;
    rep.demand = dr.argmax;

    const int p = F.dim;
    rep.fd_gradient = Vector::Zero(p);
    for (int i = 0; i < p; ++i) {
        Vector e = Vector::Zero(p);
        e[i] = h;
        SupportOptions o = opts;
        o.seed = opts.seed + 37u * static_cast<std::uint64_t>(i) + 3u;
        double up = -support_value(L, (-(xstar + e)).eval(), o).value;
        o.seed += 7121u;
        double dn = -support_value(L, (-(xstar - e)).eval(), o).value;
        rep.fd_gradient[i] = (up - dn) / (2.0 * h);
    }

    if (rep.verdict == DiffVerdict::Differentiable && dr.gradient) {
        double err = (rep.fd_gradient - *dr.gradient).norm() / (1.0 + dr.gradient->norm());
        rep.max_rel_err = err;
    }
    return rep;
}

namespace {

Vector orthant_sample(Rng& rng, int p, double box, bool allow_boundary) {
    Vector x(p);
    for (int i = 0; i < p; ++i) x[i] = box * rng.uniform();
    if (allow_boundary && rng.uniform() < 0.35) {
        // zero a nonempty proper subset of coordinates
        int z = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(p - 1)));
        for (int k = 0; k < z; ++k) x[static_cast<Eigen::Index>(rng.index(p))] = 0.0;
    }
    return x;
}

Vector orthant_step(Rng& rng, int p, double box) {
    Vector k(p);
    double scale = rng.log_uniform(1e-3, 0.4) * box;
    for (int i = 0; i < p; ++i) k[i] = scale * rng.uniform();
    if (rng.uniform() < 0.4) {
        int z = static_cast<int>(rng.index(p));
        for (int i = 0; i < p; ++i)
            if (i != z) k[i] = 0.0;
    }
    if (k.isZero()) k[static_cast<Eigen::Index>(rng.index(p))] = scale;
    return k;
}

struct MonotoneSpec {
    bool strict;
    bool need_positive_base; // F(x') > 0
    bool need_interior_base; // x' strictly positive
};

struct QuasiSpec {
    bool strict;
    bool need_positive;  // both F > 0
    bool need_interior;  // both strictly positive coordinates
};

// Continuity probe around x0: oscillation over shrinking balls intersected
// with the orthant. Returns the oscillation at the two smallest radii.
std::pair<double, double> oscillation(const ProductionFn& F, const Vector& x0, double box,
                                      Rng& rng) {
    const int p = F.dim;
    std::array<double, 4> radii{1e-2, 1e-3, 1e-4, 1e-5};
    double prev = 0.0, last = 0.0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        double r = radii[ri] * box;
        double lo = F(x0), hi = lo;
        for (int k = 0; k < 48; ++k) {
            Vector y = x0 + r * rng.unit_vector(p) * rng.uniform();
            bool ok = true;
            for (int i = 0; i < p; ++i)
                if (y[i] < 0.0) ok = false;
            if (!ok) continue;
            double v = F(y);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        prev = last;
        last = hi - lo;
        if (ri == radii.size() - 2) prev = last;
    }
    return {prev, last};
}

// walk random segments looking for value jumps; suspects are refined by
// bisection of the largest adjacent gap
std::vector<Vector> jump_scan(const ProductionFn& F, double box, Rng& rng, int segments) {
    std::vector<Vector> suspects;
    const int p = F.dim;
    const int m = 64;
    for (int s = 0; s < segments; ++s) {
        Vector a = orthant_sample(rng, p, box, false);
        Vector b = orthant_sample(rng, p, box, false);
        double worst = 0.0;
        double t_at = -1.0;
        double prev = F(a);
        for (int i = 1; i <= m; ++i) {
            double t = static_cast<double>(i) / m;
            double v = F(a + t * (b - a));
            double gap = std::abs(v - prev);
            if (gap > worst) {
                worst = gap;
                t_at = t;
            }
            prev = v;
        }
        double scale_gap = 0.25 * (1.0 + worst);
        if (t_at < 0.0 || worst < scale_gap) continue;
        double lo = t_at - 1.0 / m, hi = t_at;
        for (int it = 0; it < 50; ++it) {
            double mid = 0.5 * (lo + hi);
            double vl = F(a + lo * (b - a));
            double vm = F(a + mid * (b - a));
            if (std::abs(vm - vl) >= 0.5 * worst) hi = mid;
            else lo = mid;
        }
        suspects.push_back(a + hi * (b - a));
    }
    return suspects;
}

} // namespace

AxiomReport check_axiom(const ProductionFn& F, const std::string& axiom,
                        const AxiomConfig& cfg) {
    AxiomReport rep;
    rep.axiom = axiom;
    rep.seed = cfg.seed;
    Rng rng(cfg.seed);
    const int p = F.dim;
    const double deep = cfg.deep_frac * cfg.box;
    const double tiny = 1e-12;

    auto record = [&](std::vector<Vector> pts) {
        rep.verdict = ConditionVerdict::Violated;
        if (rep.witnesses.size() < 8) rep.witnesses.push_back({std::move(pts), 0.5});
    };

    if (axiom == "F.1") {
        Vector zero = Vector::Zero(p);
        rep.sample_count = 1;
        if (std::abs(F(zero)) > tiny) record({zero});
        return rep;
    }

    if (axiom == "F.5") {
        int n = 0;
        Rng s = rng.fork(1);
        while (n < cfg.samples) {
            Vector x = orthant_sample(s, p, cfg.box, false).array().max(deep).matrix();
            ++n;
            if (!(F(x) > 0.0)) record({x});
        }
        rep.sample_count = static_cast<std::size_t>(n);
        return rep;
    }

    if (axiom == "F.2" || axiom == "F.2b" || axiom == "F.2c" || axiom == "F.2d") {
        MonotoneSpec sp;
        sp.strict = axiom != "F.2";
        sp.need_positive_base = axiom == "F.2c";
        sp.need_interior_base = axiom == "F.2d";
        Rng s = rng.fork(2);
        int n = 0;
        auto eval_pair = [&](const Vector& xp, const Vector& x) {
            ++n;
            for (int i = 0; i < p; ++i)
                if (x[i] < xp[i]) return; // not ordered; skip
            if ((x - xp).norm() < 1e-9 * cfg.box) return;
            double fb = F(xp);
            if (sp.need_positive_base && !(fb > cfg.pos_tol)) return;
            if (sp.need_interior_base)
                for (int i = 0; i < p; ++i)
                    if (xp[i] < deep) return;
            double fx = F(x);
            if (!sp.strict) {
                if (fx < fb - tiny * (1.0 + std::abs(fb))) record({xp, x});
            } else {
                if (fx <= fb + tiny * (1.0 + std::abs(fb))) record({xp, x});
            }
        };
        for (const auto& [a, b] : F.strict_pairs) eval_pair(a, b);
        for (const auto& [a, b] : cfg.targeted_pairs) eval_pair(a, b);
        while (n < cfg.samples) {
            Vector xp = orthant_sample(s, p, cfg.box, !sp.need_interior_base);
            Vector x = xp + orthant_step(s, p, cfg.box);
            eval_pair(xp, x);
        }
        rep.sample_count = static_cast<std::size_t>(n);
        return rep;
    }

    if (axiom == "F.3" || axiom == "F.3b" || axiom == "F.3c" || axiom == "F.3d") {
        QuasiSpec sp;
        sp.strict = axiom != "F.3";
        sp.need_positive = axiom == "F.3c";
        sp.need_interior = axiom == "F.3d";
        Rng s = rng.fork(3);
        int n = 0;
        auto eval_triple = [&](const Vector& x, const Vector& y, double lam) {
            ++n;
            if ((x - y).norm() < 1e-6 * cfg.box) return;
            double fx = F(x), fy = F(y);
            if (sp.need_positive && !(fx > cfg.pos_tol && fy > cfg.pos_tol)) return;
            if (sp.need_interior)
                for (int i = 0; i < p; ++i)
                    if (x[i] < deep || y[i] < deep) return;
            Vector mid = lam * x + (1.0 - lam) * y;
            double fm = F(mid);
            double mn = std::min(fx, fy);
            if (!sp.strict) {
                if (fm < mn - tiny * (1.0 + std::abs(mn))) record({x, y});
            } else {
                if (fm <= mn + tiny * (1.0 + std::abs(mn))) record({x, y});
            }
        };
        for (const auto& t : F.strict_triples) eval_triple(t[0], t[1], 0.5);
        for (const auto& t : cfg.targeted_triples) eval_triple(t[0], t[1], 0.5);
        // axis probes: equal-value pairs on different coordinate rays expose
        // flat directions of gauges and clamped functions
        if (!sp.need_interior) {
            Rng ax = rng.fork(4);
            for (int k = 0; k < 32; ++k) {
                double t = ax.log_uniform(0.05, 1.0) * cfg.box;
                int i = static_cast<int>(ax.index(p)), j = static_cast<int>(ax.index(p));
                if (i == j) continue;
                Vector x = Vector::Zero(p), y = Vector::Zero(p);
                x[i] = t;
                y[j] = t;
                eval_triple(x, y, 0.5);
            }
        }
        while (n < cfg.samples) {
            bool near = s.uniform() < 0.5;
            Vector x = orthant_sample(s, p, cfg.box, !sp.need_interior);
            Vector y = near ? (x + orthant_step(s, p, cfg.box)).eval()
                            : orthant_sample(s, p, cfg.box, !sp.need_interior);
            double lam = (n % 4 == 0) ? 0.5 : s.uniform();
            eval_triple(x, y, lam);
        }
        rep.sample_count = static_cast<std::size_t>(n);
        return rep;
    }

    if (axiom == "F.4" || axiom == "F.4b" || axiom == "F.4c" || axiom == "F.4d") {
        Rng s = rng.fork(5);
        std::vector<Vector> centers;
        for (const auto& x : F.continuity_suspects) centers.push_back(x);
        for (const auto& x : cfg.targeted_points) centers.push_back(x);
        for (auto& x : jump_scan(F, cfg.box, s, 24)) centers.push_back(x);
        Rng c = rng.fork(6);
        while (static_cast<int>(centers.size()) < cfg.continuity_points + 8)
            centers.push_back(orthant_sample(c, p, cfg.box, axiom == "F.4" || axiom == "F.4b"));
        int n = 0;
        for (const auto& x0 : centers) {
            bool dom_ok = true;
            for (int i = 0; i < p; ++i)
                if (x0[i] < 0.0) dom_ok = false;
            if (!dom_ok) continue;
            if (axiom == "F.4c" && !(F(x0) > cfg.pos_tol)) continue;
            if (axiom == "F.4d")
                for (int i = 0; i < p; ++i)
                    if (x0[i] < deep) dom_ok = false;
            if (!dom_ok) continue;
            ++n;
            Rng o = c.fork(static_cast<std::uint64_t>(n));
            if (axiom == "F.4") {
                // upper semicontinuity: values just above F(x0) must die out
                double fx = F(x0);
                double worst = -kInf;
                for (double r : {1e-4 * cfg.box, 1e-5 * cfg.box}) {
                    for (int k = 0; k < 48; ++k) {
                        Vector y = x0 + r * o.unit_vector(p) * o.uniform();
                        bool ok = true;
                        for (int i = 0; i < p; ++i)
                            if (y[i] < 0.0) ok = false;
                        if (!ok) continue;
                        worst = std::max(worst, F(y));
                    }
                }
                if (worst > fx + 1e-6 * (1.0 + std::abs(fx))) record({x0});
            } else {
                auto [prev, last] = oscillation(F, x0, cfg.box, o);
                double gap = 1e-5 * (1.0 + std::abs(F(x0)));
                if (prev > gap && last > gap) record({x0});
            }
        }
        rep.sample_count = static_cast<std::size_t>(n);
        return rep;
    }

    throw std::invalid_argument("unknown axiom '" + axiom + "'");
}

namespace {

const std::vector<std::pair<std::vector<std::string>, std::string>>& implication_matrix() {
    static const std::vector<std::pair<std::vector<std::string>, std::string>> m = {
        {{"F.2b"}, "F.2c"},         {{"F.2c"}, "F.2"},
        {{"F.2b"}, "F.2d"},         {{"F.2c", "F.5"}, "F.2d"},
        {{"F.2d", "F.4b"}, "F.2"},  {{"F.3b"}, "F.3c"},
        {{"F.3c"}, "F.3"},          {{"F.3b"}, "F.3d"},
        {{"F.3c", "F.5"}, "F.3d"},  {{"F.3d", "F.4b"}, "F.3"},
        {{"F.2", "F.3b"}, "F.2b"},  {{"F.2", "F.3c"}, "F.2c"},
        {{"F.2", "F.3d"}, "F.2d"},  {{"F.4b"}, "F.4"},
        {{"F.4b"}, "F.4c"},         {{"F.4b"}, "F.4d"},
        {{"F.4c", "F.4"}, "F.4b"},  {{"F.4c", "F.5"}, "F.4d"},
    };
    return m;
}

const std::vector<std::string>& all_axioms() {
    static const std::vector<std::string> a = {"F.1",  "F.2",  "F.2b", "F.2c", "F.2d",
                                               "F.3",  "F.3b", "F.3c", "F.3d", "F.4",
                                               "F.4b", "F.4c", "F.4d", "F.5"};
    return a;
}

} // namespace

HarnessReport harness_prop3(const ProductionFn& F, const AxiomConfig& cfg) {
    HarnessReport rep;
    rep.name = "prop3";
    rep.details["production"] = F.label;

    std::map<std::string, AxiomReport> verdicts;
    Json ax = Json::object();
    for (const auto& a : all_axioms()) {
        AxiomConfig c = cfg;
        c.seed = cfg.seed + std::hash<std::string>{}(a) % 100000;
        verdicts.emplace(a, check_axiom(F, a, c));
        ax[a] = to_string(verdicts.at(a).verdict);
    }
    rep.details["axioms"] = ax;

    Json matrix = Json::array();
    for (const auto& [premises, conclusion] : implication_matrix()) {
        bool all_hold = true;
        for (const auto& pr : premises)
            if (verdicts.at(pr).verdict != ConditionVerdict::HoldsOnSample) all_hold = false;
        bool contradicted =
            all_hold && verdicts.at(conclusion).verdict == ConditionVerdict::Violated;
        Json e;
        std::string lhs;
        for (std::size_t i = 0; i < premises.size(); ++i)
            lhs += (i ? " & " : "") + premises[i];
        e["implication"] = lhs + " => " + conclusion;
        e["contradicted"] = contradicted;
        matrix.push_back(e);
        if (contradicted) rep.alarm = true;
    }
    rep.details["matrix"] = matrix;
    rep.details["status"] = rep.alarm ? "ALARM: implication matrix contradicted" : "consistent";
    return rep;
}

HarnessReport harness_saijo(const ProductionFn& F, const std::vector<GammaSpec>& gammas,
                            int grid_n, const SamplerConfig& cfg, const AxiomConfig& axcfg) {
    HarnessReport rep;
    rep.name = "saijo";
    rep.details["production"] = F.label;

    std::map<std::string, AxiomReport> ax;
    for (const char* a : {"F.2c", "F.3c", "F.3", "F.4b"}) {
        AxiomConfig c = axcfg;
        c.seed = axcfg.seed + std::hash<std::string>{}(a) % 100000;
        ax.emplace(a, check_axiom(F, a, c));
    }
    Json axj = Json::object();
    for (const auto& [k, v] : ax) axj[k] = v.to_json();
    rep.details["axioms"] = axj;
    const bool continuous = ax.at("F.4b").verdict == ConditionVerdict::HoldsOnSample;
    const bool f2c = ax.at("F.2c").verdict == ConditionVerdict::HoldsOnSample;
    const bool f3c = ax.at("F.3c").verdict == ConditionVerdict::HoldsOnSample;

    Json levels = Json::array();
    Json findings = Json::array();
    for (const auto& gs : gammas) {
        Json sec;
        sec["gamma"] = gs.gamma;
        HSet L;
        try {
            L = level_set(F, gs.gamma, gs.witness);
        } catch (const std::exception& e) {
            sec["status"] = std::string("infeasible level skipped: ") + e.what();
            levels.push_back(sec);
            continue;
        }

        ConditionReport fpssc = check_condition(L, "fp-ssc", cfg);
        ConditionReport rsas = check_condition(L, "r-sas", cfg);
        sec["fp-ssc"] = fpssc.to_json();
        sec["r-sas"] = rsas.to_json();

        auto grid = dual_interior_grid(L.K(), grid_n, 1.0);
        int diff = 0, indet = 0;
        Json nd = Json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            SupportOptions so = cfg.support;
            so.seed = cfg.seed + 211 * (i + 1);
            DifferentiabilityResult r = is_differentiable_at(L, grid[i], so);
            if (r.verdict == DiffVerdict::Differentiable) ++diff;
            else if (r.verdict == DiffVerdict::Indeterminate) ++indet;
            else {
                Json e;
                e["xstar"] = to_json(grid[i]);
                e["argmax_diameter"] = r.argmax.diameter;
                nd.push_back(e);
            }
        }
        sec["differentiable"] = diff;
        sec["grid_points"] = static_cast<int>(grid.size());
        sec["indeterminate"] = indet;
        sec["not_differentiable"] = nd;
        if (indet > 0) rep.indeterminate = true;
        const bool all_diff = diff == static_cast<int>(grid.size());

        // forward implications (require continuity of F)
        if (continuous && f2c && fpssc.verdict == ConditionVerdict::Violated) {
            rep.alarm = true;
            sec["alarm"] = "monotonicity holds but translation-interiority fails";
        }
        if (continuous && f3c && rsas.verdict == ConditionVerdict::Violated) {
            rep.alarm = true;
            sec["alarm"] = "strict quasiconcavity holds but midpoint-interiority fails";
        }
        if (continuous && f3c && !all_diff && indet == 0) {
            rep.alarm = true;
            sec["alarm"] = "strict quasiconcavity + continuity but cost not differentiable";
        }
        if (continuous && f2c && all_diff &&
            ax.at("F.3").verdict == ConditionVerdict::Violated) {
            rep.alarm = true;
            sec["alarm"] = "differentiable cost + monotonicity but quasiconcavity fails";
        }

        // recorded negative findings (hypothesis violated, no alarm)
        if (!continuous && f3c && !all_diff && indet == 0) {
            Json f;
            f["gamma"] = gs.gamma;
            f["finding"] =
                "non-differentiable cost with strict quasiconcavity: continuity hypothesis "
                "violated, no alarm";
            findings.push_back(f);
        }
        if (continuous && all_diff && ax.at("F.3c").verdict == ConditionVerdict::Violated) {
            Json f;
            f["gamma"] = gs.gamma;
            f["finding"] =
                "cost differentiable on the grid yet strict quasiconcavity is violated: "
                "differentiability does not imply strictness";
            findings.push_back(f);
        }
        if (fpssc.verdict == ConditionVerdict::HoldsOnSample &&
            rsas.verdict == ConditionVerdict::HoldsOnSample &&
            (ax.at("F.2c").verdict == ConditionVerdict::Violated ||
             ax.at("F.3c").verdict == ConditionVerdict::Violated)) {
            Json f;
            f["gamma"] = gs.gamma;
            f["finding"] =
                "level-set conditions hold while the strict axioms fail: the converse "
                "implications are false";
            findings.push_back(f);
        }
        levels.push_back(sec);
    }
    rep.details["levels"] = levels;
    rep.details["findings"] = findings;
    rep.details["status"] =
        rep.alarm ? "ALARM" : (rep.indeterminate ? "indeterminate" : "pass");
    return rep;
}

} // namespace suppdiff
