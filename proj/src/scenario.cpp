// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/scenario.hpp>

#include <suppdiff/parallel.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace suppdiff {

namespace {

Tolerances parse_tolerances(const Json& j) {
    Tolerances t;
    if (!j.is_object()) return t;
    if (j.contains("val_rel")) t.val_rel = j["val_rel"].get<double>();
    if (j.contains("cluster_frac")) t.cluster_frac = j["cluster_frac"].get<double>();
    if (j.contains("diam_frac")) t.diam_frac = j["diam_frac"].get<double>();
    if (j.contains("bis_rel")) t.bis_rel = j["bis_rel"].get<double>();
    if (j.contains("strict_frac")) t.strict_frac = j["strict_frac"].get<double>();
    return t;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Vector find_level_witness(const ProductionFn& F, double gamma) {
    Vector ones = Vector::Ones(F.dim);
    for (double t = 1e-3; t <= 1e12; t *= 2.0) {
        Vector x = t * ones;
        if (F(x) >= gamma) return x;
    }
    throw std::invalid_argument("no feasibility witness found for gamma=" +
                                std::to_string(gamma) + " of " + F.label);
}

std::vector<GammaSpec> parse_gammas(const Json& op, const ProductionFn& F) {
    std::vector<GammaSpec> out;
    if (op.contains("gammas")) {
        for (const auto& g : op["gammas"]) {
            GammaSpec gs;
            gs.gamma = g.at("gamma").get<double>();
            gs.witness = g.contains("witness") ? vector_from_json(g["witness"])
                                               : find_level_witness(F, gs.gamma);
            out.push_back(gs);
        }
    }
    if (out.empty()) throw std::invalid_argument("verify: no gamma levels given");
    return out;
}

} // namespace

HSet resolve_set(const Json& spec) {
    if (spec.is_string()) return set_fixture(spec.get<std::string>());
    if (spec.is_object()) {
        if (spec.contains("production")) {
            ProductionFn F = production_fixture(spec.at("production").get<std::string>());
            double gamma = spec.at("gamma").get<double>();
            Vector w = spec.contains("witness") ? vector_from_json(spec["witness"])
                                                : find_level_witness(F, gamma);
            return level_set(F, gamma, w);
        }
        if (spec.contains("shift")) {
            Cone K = Cone::from_json(spec.at("cone"));
            return shifted_cone(vector_from_json(spec.at("shift")), K);
        }
    }
    throw std::invalid_argument("scenario: unrecognized set spec");
}

// ---------------------------------------------------------------------------
// prop-fa battery: homogeneity, level identity, monotonicity, attainment,
// positivity coverage and oracle agreement for one fixture.
// ---------------------------------------------------------------------------

HarnessReport verify_prop_fa(const HSet& A, const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "prop-fa";
    rep.details["set"] = A.label;
    const Cone& K = A.K();
    const int n = cfg.samples;
    Rng rng(cfg.seed);
    GaugeOptions gopts;
    gopts.tol = cfg.tol;

    auto section = [&](const std::string& name, std::size_t count,
                       const std::vector<Json>& witnesses) {
        Json s;
        s["samples"] = count;
        s["violations"] = witnesses.size();
        if (!witnesses.empty()) {
            Json w = Json::array();
            for (std::size_t i = 0; i < std::min<std::size_t>(witnesses.size(), 8); ++i)
                w.push_back(witnesses[i]);
            s["witnesses"] = w;
            rep.alarm = true;
        }
        rep.details[name] = s;
    };

    // pool of K-points, mixing interior and boundary
    std::vector<Vector> pool;
    Rng pr = rng.fork(1);
    for (int i = 0; i < n; ++i) {
        if (i % 4 == 3) {
            Vector d = K.boundary_direction(pr);
            pool.push_back(pr.log_uniform(0.05, 1.0) * A.bound_hint * d);
        } else {
            pool.push_back(K.sample_point(pr, A.bound_hint));
        }
    }

    {
        // homogeneity
        std::vector<Json> bad;
        Rng r = rng.fork(2);
        for (const auto& x : pool) {
            double t = r.uniform(1e-3, 10.0);
            double gx = gauge(A, x, gopts).value;
            double gtx = gauge(A, (t * x).eval(), gopts).value;
            if (std::abs(gtx - t * gx) > 1e-6 * (1.0 + t) * (1.0 + gx)) {
                Json w;
                w["x"] = to_json(x);
                w["t"] = t;
                w["gauge_x"] = gx;
                w["gauge_tx"] = gtx;
                bad.push_back(w);
            }
        }
        section("homogeneity", pool.size(), bad);
    }
    {
        // attainment: x lies in gauge(x) * A
        std::vector<Json> bad;
        std::size_t checked = 0;
        for (const auto& x : pool) {
            double g = gauge(A, x, gopts).value;
            if (g <= 1e-9) continue;
            ++checked;
            bool ok = A.member(x / g) || A.member(x / (g * (1.0 - 1e-9)));
            if (!ok) {
                Json w;
                w["x"] = to_json(x);
                w["gauge"] = g;
                bad.push_back(w);
            }
        }
        section("attainment", checked, bad);
    }
    {
        // monotonicity along the cone order
        std::vector<Json> bad;
        Rng r = rng.fork(3);
        for (const auto& x : pool) {
            Vector k = K.sample_point(r, 0.5 * A.bound_hint);
            double gx = gauge(A, x, gopts).value;
            double gk = gauge(A, (x + k).eval(), gopts).value;
            if (gk < gx - 1e-9 * (1.0 + gx)) {
                Json w;
                w["x"] = to_json(x);
                w["k"] = to_json(k);
                bad.push_back(w);
            }
        }
        section("monotonicity", pool.size(), bad);
    }
    {
        // level identity at a few levels
        std::vector<Json> bad;
        std::size_t total = 0;
        for (double gamma : {0.5, 1.0, 2.0}) {
            auto repg = level_identity_check(A, gamma, pool, gopts);
            total += repg.sample_count;
            for (const auto& [x, xg] : repg.witnesses) {
                Json w;
                w["gamma"] = gamma;
                w["x"] = to_json(x);
                bad.push_back(w);
            }
        }
        section("level_identity", total, bad);
    }
    {
        // positivity on the deep interior
        std::vector<Json> bad;
        Rng r = rng.fork(4);
        std::size_t checked = 0;
        for (int i = 0; i < n / 2; ++i) {
            Vector x = K.sample_point(r, A.bound_hint) +
                       0.05 * A.bound_hint * K.interior_point();
            if (!K.interior_contains(x)) continue;
            ++checked;
            if (!(gauge(A, x, gopts).value > 0.0)) {
                Json w;
                w["x"] = to_json(x);
                bad.push_back(w);
            }
        }
        section("interior_positivity", checked, bad);
    }
    if (A.gauge_oracle) {
        // bisection against the closed form
        std::vector<Json> bad;
        GaugeOptions numeric = gopts;
        numeric.use_oracle = false;
        double worst = 0.0;
        for (const auto& x : pool) {
            double go = (*A.gauge_oracle)(x);
            double gb = gauge(A, x, numeric).value;
            double rel = std::abs(gb - go) / (1.0 + std::abs(go));
            worst = std::max(worst, rel);
            if (rel > 1e-9) {
                Json w;
                w["x"] = to_json(x);
                w["oracle"] = go;
                w["bisection"] = gb;
                bad.push_back(w);
            }
        }
        section("oracle_agreement", pool.size(), bad);
        rep.details["oracle_agreement"]["max_rel_err"] = worst;
    }
    if (A.declared_convex) {
        // midpoint concavity (quasiconcavity upgraded by homogeneity)
        std::vector<Json> bad;
        Rng r = rng.fork(5);
        std::size_t checked = 0;
        for (int i = 0; i + 1 < static_cast<int>(pool.size()); i += 2) {
            const Vector& x = pool[i];
            const Vector& y = pool[i + 1];
            ++checked;
            double gm = gauge(A, (0.5 * (x + y)).eval(), gopts).value;
            double gx = gauge(A, x, gopts).value;
            double gy = gauge(A, y, gopts).value;
            if (gm < 0.5 * (gx + gy) - 1e-6 * (1.0 + gx + gy)) {
                Json w;
                w["x"] = to_json(x);
                w["y"] = to_json(y);
                bad.push_back(w);
            }
            (void)r;
        }
        section("midpoint_concavity", checked, bad);
    }
    rep.details["status"] = rep.alarm ? "ALARM: gauge property violated" : "pass";
    return rep;
}

HarnessReport verify_cor_cfa(const HSet& A, const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "cor-cfa";
    rep.details["set"] = A.label;
    const Cone& K = A.K();
    rep.details["cone"] = to_string(K.kind());
    const std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4};
    GaugeOptions gopts;
    gopts.tol = cfg.tol;
    auto osc = continuity_probe(A, A.witness, radii, cfg.seed, 96, gopts);
    Json table = Json::array();
    for (const auto& [r, o] : osc) {
        Json e;
        e["radius"] = r;
        e["oscillation"] = o;
        table.push_back(e);
    }
    rep.details["oscillation"] = table;
    const double first = osc.front().second;
    const double last = osc.back().second;
    // vanishing either absolutely or relative to the coarsest radius; the
    // gauge can be Hoelder rather than Lipschitz at cone faces
    const bool decaying = last < 1e-3 || last <= 0.25 * first;
    if (K.polyhedral_kind()) {
        if (!decaying) {
            rep.alarm = true;
            rep.details["status"] = "ALARM: gauge oscillates over a polyhedral cone";
        } else {
            rep.details["status"] = "pass: oscillation vanishes";
        }
    } else {
        rep.details["status"] = last >= 0.9
                                    ? "finding: persistent oscillation (discontinuity at x0)"
                                    : "consistent with continuity at sampled points";
    }
    return rep;
}

HarnessReport verify_shephard(const ProductionFn& F, const std::vector<GammaSpec>& gammas,
                              int prices, const SamplerConfig& cfg) {
    HarnessReport rep;
    rep.name = "shephard";
    rep.details["production"] = F.label;

    AxiomConfig axc;
    axc.seed = cfg.seed;
    const bool continuous =
        check_axiom(F, "F.4b", axc).verdict == ConditionVerdict::HoldsOnSample;
    const bool strict_qc =
        check_axiom(F, "F.3c", axc).verdict == ConditionVerdict::HoldsOnSample;
    rep.details["F.4b"] = continuous ? "holds_on_sample" : "violated";
    rep.details["F.3c"] = strict_qc ? "holds_on_sample" : "violated";

    Json levels = Json::array();
    for (const auto& gs : gammas) {
        Json sec;
        sec["gamma"] = gs.gamma;
        Rng rng(cfg.seed);
        std::vector<Vector> pts;
        pts.push_back(Vector::Ones(F.dim)); // structural uniform price
        Rng pr = rng.fork(7);
        for (int i = 1; i < prices; ++i) {
            Vector x(F.dim);
            for (int d = 0; d < F.dim; ++d) x[d] = pr.uniform(0.5, 3.0);
            pts.push_back(x);
        }
        double worst = 0.0;
        int nondiff = 0, indet = 0;
        Json nd = Json::array();
        std::vector<ShephardReport> results(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
            SupportOptions so = cfg.support;
            so.seed = cfg.seed + 419 * (i + 1);
            results[i] = shephard_check(F, pts[i], gs.gamma, gs.witness, 0.0, so);
        });
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& r = results[i];
            if (r.verdict == DiffVerdict::Differentiable) {
                worst = std::max(worst, r.max_rel_err);
                if (r.max_rel_err > 1e-4) {
                    rep.alarm = true;
                    Json w;
                    w["price"] = to_json(pts[i]);
                    w["rel_err"] = r.max_rel_err;
                    sec["gradient_mismatch"] = w;
                }
            } else if (r.verdict == DiffVerdict::NotDifferentiable) {
                ++nondiff;
                Json e;
                e["price"] = to_json(pts[i]);
                e["demand_diameter"] = r.demand.diameter;
                nd.push_back(e);
            } else {
                ++indet;
            }
        }
        sec["prices"] = static_cast<int>(pts.size());
        sec["max_rel_err"] = worst;
        sec["not_differentiable"] = nd;
        sec["indeterminate"] = indet;
        if (indet > 0) rep.indeterminate = true;
        if (nondiff > 0) {
            if (continuous && strict_qc) {
                rep.alarm = true;
                sec["alarm"] = "smooth hypotheses hold but the cost has a kink";
            } else {
                sec["finding"] =
                    "non-differentiable cost recorded; smoothness hypotheses violated, no alarm";
            }
        }
        levels.push_back(sec);
    }
    rep.details["levels"] = levels;
    rep.details["status"] = rep.alarm ? "ALARM" : (rep.indeterminate ? "indeterminate" : "pass");
    return rep;
}

std::string scan_csv(const HSet& A, const std::vector<Vector>& grid,
                     const SamplerConfig& cfg) {
    const int p = A.dim();
    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        SupportOptions so = cfg.support;
        so.seed = cfg.seed + 131 * (i + 1);
        DifferentiabilityResult r = is_differentiable_at(A, grid[i], so);
        std::string row;
        for (int d = 0; d < p; ++d) row += fmt_double(grid[i][d]) + ",";
        row += fmt_double(r.argmax.sigma) + ",";
        row += fmt_double(r.argmax.diameter) + ",";
        row += to_string(r.verdict);
        rows[i] = std::move(row);
    });
    std::string out;
    for (int d = 0; d < p; ++d) out += "x" + std::to_string(d + 1) + ",";
    out += "sigma,diameter,verdict\n";
    for (const auto& r : rows) {
        out += r;
        out += "\n";
    }
    return out;
}

std::vector<Vector> read_points_csv(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open points file: " + path);
    std::vector<Vector> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != dim)
            throw std::invalid_argument("points file row has wrong dimension");
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v[i] = vals[i];
        pts.push_back(v);
    }
    return pts;
}

namespace {

Json analyze_op(const Json& op, const Json& scenario, const SamplerConfig& cfg) {
    HSet A = resolve_set(scenario.at("set"));
    Json res;
    res["op"] = "analyze";
    res["set"] = A.label;
    if (op.contains("dual")) {
        Vector xstar = vector_from_json(op["dual"]);
        SupportOptions so = cfg.support;
        SupportEval ev = support_value(A, xstar, so);
        Json s;
        s["xstar"] = to_json(xstar);
        s["value"] = std::isfinite(ev.value) ? Json(ev.value) : Json("inf");
        s["status"] = to_string(ev.status);
        if (ev.status == SupportStatus::Finite && A.cone &&
            A.cone->strict_dual_contains((-xstar).eval())) {
            DifferentiabilityResult r = is_differentiable_at(A, xstar, so);
            s["argmax_diameter"] = r.argmax.diameter;
            s["differentiable"] = to_string(r.verdict);
            Json reps = Json::array();
            for (const auto& rp : r.argmax.representatives) reps.push_back(to_json(rp));
            s["representatives"] = reps;
        }
        res["support"] = s;
    }
    if (op.contains("gauge_at")) {
        Vector x = vector_from_json(op["gauge_at"]);
        GaugeOptions gopts;
        gopts.tol = cfg.tol;
        GaugeEval g = gauge(A, x, gopts);
        Json s;
        s["x"] = to_json(x);
        s["value"] = g.value;
        s["bracket_width"] = g.bracket_width;
        res["gauge"] = s;
    }
    return res;
}

Json check_op(const Json& op, const Json& scenario, SamplerConfig cfg) {
    HSet A = resolve_set(scenario.at("set"));
    if (op.contains("samples")) cfg.samples = op["samples"].get<int>();
    ConditionReport r = check_condition(A, op.at("condition").get<std::string>(), cfg);
    Json res;
    res["op"] = "check";
    res["set"] = A.label;
    res["report"] = r.to_json();
    return res;
}

struct OpOutcome {
    Json result;
    int exit_code = 0;
};

OpOutcome verify_op(const Json& op, const Json& scenario, SamplerConfig cfg) {
    const std::string suite = op.at("suite").get<std::string>();
    if (op.contains("samples")) cfg.samples = op["samples"].get<int>();
    const int grid_n = op.contains("grid") ? op["grid"].get<int>() : 100;

    auto from_harness = [&](HarnessReport&& h) {
        OpOutcome o;
        o.result["op"] = "verify";
        o.result["suite"] = suite;
        o.result["alarm"] = h.alarm;
        o.result["indeterminate"] = h.indeterminate;
        o.result["details"] = h.details;
        if (h.alarm) {
            std::string replay = "suppdiff verify --suite " + suite;
            if (scenario.contains("set") && scenario["set"].is_string())
                replay += " --set " + scenario["set"].get<std::string>();
            if (scenario.contains("production") && scenario["production"].is_string())
                replay += " --production " + scenario["production"].get<std::string>();
            replay += " --seed " + std::to_string(cfg.seed);
            o.result["replay"] = replay;
        }
        o.exit_code = h.exit_code();
        return o;
    };

    if (suite == "fact14" || suite == "prop-suf" || suite == "prop-fa" ||
        suite == "cor-cfa" || suite == "rem1") {
        HSet A = resolve_set(scenario.at("set"));
        if (suite == "prop-fa") return from_harness(verify_prop_fa(A, cfg));
        if (suite == "cor-cfa") return from_harness(verify_cor_cfa(A, cfg));
        if (suite == "rem1") return from_harness(harness_rem1(A, cfg));
        auto grid = dual_interior_grid(A.K(), grid_n, 1.0);
        if (suite == "fact14") return from_harness(harness_fact14(A, grid, cfg));
        return from_harness(harness_prop_suf(A, grid, cfg));
    }

    ProductionFn F = production_fixture(scenario.at("production").get<std::string>());
    AxiomConfig axc;
    axc.seed = cfg.seed;
    if (op.contains("samples")) axc.samples = op["samples"].get<int>();
    if (suite == "prop3") return from_harness(harness_prop3(F, axc));
    if (suite == "saijo")
        return from_harness(harness_saijo(F, parse_gammas(op, F), grid_n, cfg, axc));
    if (suite == "shephard") {
        const int prices = op.contains("prices") ? op["prices"].get<int>() : 50;
        return from_harness(verify_shephard(F, parse_gammas(op, F), prices, cfg));
    }
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

Json scan_op(const Json& op, const Json& scenario, const SamplerConfig& cfg) {
    HSet A = resolve_set(scenario.at("set"));
    const int grid_n = op.contains("grid") ? op["grid"].get<int>() : 64;
    auto grid = dual_interior_grid(A.K(), grid_n, 1.0);
    std::string csv = scan_csv(A, grid, cfg);
    Json res;
    res["op"] = "scan";
    res["set"] = A.label;
    res["grid"] = grid_n;
    if (op.contains("out_csv")) {
        const std::string path = op["out_csv"].get<std::string>();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write CSV to " + path);
        out << csv;
        res["csv_path"] = path;
    } else {
        res["csv"] = csv;
    }
    return res;
}

} // namespace

Json battery_scenario(std::uint64_t seed, int grid, int samples) {
    Json ops = Json::array();
    auto set_suite = [&](const std::string& suite, const std::string& set) {
        Json e;
        e["op"] = "verify";
        e["suite"] = suite;
        e["set"] = set;
        e["grid"] = grid;
        ops.push_back(e);
    };
    auto prod_suite = [&](const std::string& suite, const std::string& prod, Json extra) {
        extra["op"] = "verify";
        extra["suite"] = suite;
        extra["production"] = prod;
        extra["grid"] = grid;
        ops.push_back(extra);
    };

    set_suite("fact14", "d4");
    set_suite("fact14", "ex3b");
    set_suite("fact14", "hyperbola-set");
    set_suite("prop-suf", "hyperbola-set");
    set_suite("prop-suf", "d4");
    for (const char* s : {"ex3a", "ex3b", "ex3c", "leontieff", "d4", "hyperbola-set"})
        set_suite("prop-fa", s);
    set_suite("cor-cfa", "ex3c");
    set_suite("cor-cfa", "leontieff");
    set_suite("cor-cfa", "d4");
    for (const char* s : {"ex3a", "d4", "hyperbola-set", "adsz-L52"})
        set_suite("rem1", s);

    prod_suite("saijo", "ex-adsz",
               Json{{"gammas", Json::array({Json{{"gamma", 2.5},
                                                 {"witness", Json::array({0.5, 2.0})}}})}});
    prod_suite("saijo", "d4-gauge", Json{{"gammas", Json::array({Json{{"gamma", 1.0}}})}});
    prod_suite("saijo", "phi-g",
               Json{{"gammas",
                     Json::array({Json{{"gamma", 0.5}}, Json{{"gamma", 1.5}}})}});
    prod_suite("shephard", "hyperbola",
               Json{{"gammas",
                     Json::array({Json{{"gamma", 1.0}}, Json{{"gamma", 2.0}}})},
                    {"prices", 50}});
    prod_suite("shephard", "ex-adsz",
               Json{{"gammas", Json::array({Json{{"gamma", 2.5},
                                                 {"witness", Json::array({0.5, 2.0})}}})},
                    {"prices", 8}});
    prod_suite("prop3", "ex-adsz", Json::object());
    prod_suite("prop3", "leontieff-f", Json::object());
    prod_suite("prop3", "zero", Json::object());

    Json scen;
    scen["schema"] = 1;
    scen["seed"] = seed;
    scen["samples"] = samples;
    scen["operations"] = ops;
    return scen;
}

RunResult run_scenario(const Json& scenario) {
    if (!scenario.is_object()) throw std::invalid_argument("scenario must be an object");
    if (scenario.contains("schema") && scenario["schema"].get<int>() != 1)
        throw std::invalid_argument("unsupported scenario schema");

    SamplerConfig cfg;
    cfg.seed = scenario.contains("seed") ? scenario["seed"].get<std::uint64_t>()
                                         : kDefaultSeed;
    cfg.tol = parse_tolerances(scenario.contains("tolerances") ? scenario["tolerances"]
                                                               : Json::object());
    if (scenario.contains("samples")) cfg.samples = scenario["samples"].get<int>();
    cfg.support.tol = cfg.tol;
    cfg.support.seed = cfg.seed;

    RunResult rr;
    rr.report["schema"] = 1;
    rr.report["seed"] = cfg.seed;
    Json results = Json::array();
    for (const auto& op : scenario.at("operations")) {
        const std::string kind = op.at("op").get<std::string>();
        if (kind == "analyze") {
            results.push_back(analyze_op(op, scenario, cfg));
        } else if (kind == "scan") {
            results.push_back(scan_op(op, scenario, cfg));
        } else if (kind == "check") {
            results.push_back(check_op(op, scenario, cfg));
        } else if (kind == "verify") {
            OpOutcome o = verify_op(op, scenario, cfg);
            results.push_back(o.result);
            rr.exit_code = std::max(rr.exit_code, o.exit_code);
        } else {
            throw std::invalid_argument("unknown operation '" + kind + "'");
        }
    }
    rr.report["results"] = results;

    if (scenario.contains("out")) {
        const std::string path = scenario["out"].get<std::string>();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write report to " + path);
        out << rr.report.dump(2) << "\n";
    }
    return rr;
}

} // namespace suppdiff
