// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/conditions.hpp>
#include <suppdiff/cost.hpp>
#include <suppdiff/fixtures.hpp>
#include <suppdiff/gauge.hpp>
#include <suppdiff/report.hpp>

#include <string>
#include <vector>

namespace suppdiff {

// Exit-code contract shared by the runner and the CLI:
//   0 all suites pass / hold, 1 schema or usage error,
//   2 replayable theorem-level alarm, 3 indeterminate (truncation/resolution)
struct RunResult {
    Json report;
    int exit_code = 0;
};

// Executes a scenario document:
// {
//   "schema": 1, "seed": <u64>,
//   "set": "<fixture>" | {"production": "<fixture>", "gamma": g, "witness": [...]}
//          | {"shift": [...], "cone": {...}},
//   "production": "<fixture>",
//   "tolerances": {"val_rel":…, "cluster_frac":…, "diam_frac":…, "bis_rel":…},
//   "operations": [{"op": "analyze"|"scan"|"check"|"verify", ...}, ...],
//   "out": "<report path>"
// }
// Reports are byte-identical for identical (scenario, seed).
RunResult run_scenario(const Json& scenario);

// Resolves the scenario "set" field (fixture label, level-set object or
// shifted-cone object) into an HSet.
HSet resolve_set(const Json& spec);

// Individual verify suites (also reachable through run_scenario).
HarnessReport verify_prop_fa(const HSet& A, const SamplerConfig& cfg);
HarnessReport verify_cor_cfa(const HSet& A, const SamplerConfig& cfg);
HarnessReport verify_shephard(const ProductionFn& F, const std::vector<GammaSpec>& gammas,
                              int prices, const SamplerConfig& cfg);

// One CSV row per grid functional: coordinates, support value, argmax
// diameter, differentiability verdict.
std::string scan_csv(const HSet& A, const std::vector<Vector>& grid,
                     const SamplerConfig& cfg);

// The fixed suite battery behind `verify --suite all`: every theorem suite on
// its canonical fixtures, as one scenario document.
Json battery_scenario(std::uint64_t seed, int grid, int samples);

// Point list ingestion: one point per row, comma-separated coordinates.
std::vector<Vector> read_points_csv(const std::string& path, int dim);

} // namespace suppdiff
