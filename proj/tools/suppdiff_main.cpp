// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/scenario.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace suppdiff;

namespace {

Vector parse_point(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    Vector v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

int emit(const RunResult& rr, const std::string& out_path) {
    if (out_path.empty()) std::cout << rr.report.dump(2) << "\n";
    return rr.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"suppdiff: support functions, subdifferentials and gauges of "
                 "cone-ordered sets, with theorem verification suites"};
    app.require_subcommand(1);

    std::string set_name, production_name, condition, suite, dual, gauge_at, out_path,
        scenario_path, out_csv;
    std::uint64_t seed = kDefaultSeed;
    int grid = 100, samples = 1000, prices = 50;
    std::vector<double> gammas;
    double tol_val = -1.0, tol_diam = -1.0, tol_cluster = -1.0, tol_bis = -1.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "deterministic RNG seed");
        cmd->add_option("--out", out_path, "write the JSON report to this path");
        cmd->add_option("--tol-val", tol_val, "relative support-value tolerance");
        cmd->add_option("--tol-diam", tol_diam, "singleton diameter fraction");
        cmd->add_option("--tol-cluster", tol_cluster, "cluster merge fraction");
        cmd->add_option("--tol-bis", tol_bis, "gauge bisection tolerance");
    };

    auto* lf = app.add_subcommand("list-fixtures", "print the fixture catalog");

    auto* an = app.add_subcommand("analyze", "support/gauge point queries");
    an->add_option("--set", set_name, "set fixture name")->required();
    an->add_option("--dual", dual, "functional, comma separated");
    an->add_option("--gauge-at", gauge_at, "gauge evaluation point");
    add_common(an);

    auto* sc = app.add_subcommand("scan", "grid scan to CSV");
    sc->add_option("--set", set_name)->required();
    sc->add_option("--grid", grid, "number of grid functionals");
    sc->add_option("--csv", out_csv, "CSV output path");
    add_common(sc);

    auto* ck = app.add_subcommand("check", "single condition check");
    ck->add_option("--set", set_name)->required();
    ck->add_option("--condition", condition, "condition id (fp-ssc, r-sas, ...)")->required();
    ck->add_option("--samples", samples);
    add_common(ck);

    auto* vf = app.add_subcommand("verify", "theorem verification suites");
    vf->add_option("--suite", suite,
                   "fact14|prop-suf|prop-fa|prop3|saijo|shephard|cor-cfa|rem1|all")
        ->required();
    vf->add_option("--set", set_name);
    vf->add_option("--production", production_name);
    vf->add_option("--gamma", gammas, "output level(s) for saijo/shephard");
    vf->add_option("--grid", grid);
    vf->add_option("--samples", samples);
    vf->add_option("--prices", prices);
    add_common(vf);

    auto* rn = app.add_subcommand("run", "execute a scenario document");
    rn->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    add_common(rn);

    CLI11_PARSE(app, argc, argv);

    try {
        Json scen;
        scen["schema"] = 1;
        scen["seed"] = seed;
        Json tols = Json::object();
        if (tol_val > 0) tols["val_rel"] = tol_val;
        if (tol_diam > 0) tols["diam_frac"] = tol_diam;
        if (tol_cluster > 0) tols["cluster_frac"] = tol_cluster;
        if (tol_bis > 0) tols["bis_rel"] = tol_bis;
        if (!tols.empty()) scen["tolerances"] = tols;
        if (!out_path.empty()) scen["out"] = out_path;

        if (lf->parsed()) {
            Json j = Json::array();
            for (const auto& f : list_fixtures()) {
                Json e;
                e["name"] = f.name;
                e["kind"] = f.kind;
                e["dim"] = f.dim;
                if (f.kind == "set") e["satisfies_H"] = f.satisfies_h;
                e["description"] = f.description;
                j.push_back(e);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (rn->parsed()) {
            std::ifstream in(scenario_path);
            if (!in) throw std::invalid_argument("cannot open scenario " + scenario_path);
            Json doc = Json::parse(in);
            if (!out_path.empty()) doc["out"] = out_path;
            if (doc.contains("schema") || true) return emit(run_scenario(doc), out_path);
        }

        Json op;
        if (an->parsed()) {
            scen["set"] = set_name;
            op["op"] = "analyze";
            if (!dual.empty()) op["dual"] = to_json(parse_point(dual));
            if (!gauge_at.empty()) op["gauge_at"] = to_json(parse_point(gauge_at));
        } else if (sc->parsed()) {
            scen["set"] = set_name;
            op["op"] = "scan";
            op["grid"] = grid;
            if (!out_csv.empty()) op["out_csv"] = out_csv;
        } else if (ck->parsed()) {
            scen["set"] = set_name;
            op["op"] = "check";
            op["condition"] = condition;
            op["samples"] = samples;
        } else if (vf->parsed()) {
            if (suite == "all") {
                Json battery = battery_scenario(seed, grid, samples);
                if (!out_path.empty()) battery["out"] = out_path;
                if (!tols.empty()) battery["tolerances"] = tols;
                return emit(run_scenario(battery), out_path);
            }
            op["op"] = "verify";
            op["suite"] = suite;
            op["grid"] = grid;
            op["samples"] = samples;
            op["prices"] = prices;
            if (!set_name.empty()) scen["set"] = set_name;
            if (!production_name.empty()) scen["production"] = production_name;
            if (!gammas.empty()) {
                Json gj = Json::array();
                for (double g : gammas) gj.push_back(Json{{"gamma", g}});
                op["gammas"] = gj;
            }
        }
        scen["operations"] = Json::array({op});
        return emit(run_scenario(scen), out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
