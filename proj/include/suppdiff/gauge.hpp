// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/hset.hpp>
#include <suppdiff/rng.hpp>
#include <suppdiff/types.hpp>

#include <vector>

namespace suppdiff {

struct GaugeEval {
    double value = 0.0;
    double bracket_width = 0.0; // bisection residual; 0 for closed forms
};

struct GaugeOptions {
    Tolerances tol{};
    bool use_oracle = true;
    int max_iter = 200;
    int max_doublings = 60;
};

// F_A(x) = max{t >= 0 : x in tA} for x in K. The dilation membership set
// {t > 0 : member(x/t)} is an interval (0, F], so after bracketing (geometric
// search down from t = 1 for the first hit, doubling up for the first miss)
// plain bisection converges; a value of 0 means no membership hit above the
// resolution floor. Throws if x is outside K.
GaugeEval gauge(const HSet& A, const Vector& x, const GaugeOptions& opts = {});

// Simple witness report shared by the sampled gauge checkers.
struct GaugeCheckReport {
    std::string check;
    bool holds = true;
    std::size_t sample_count = 0;
    std::vector<std::pair<Vector, Vector>> witnesses; // offending inputs
    std::vector<double> witness_lambdas;              // for triple checks
};

// {x in K : F_A(x) >= gamma} == gamma*A on the given samples (modulo a
// tolerance band around the level boundary).
GaugeCheckReport level_identity_check(const HSet& A, double gamma,
                                      const std::vector<Vector>& samples,
                                      const GaugeOptions& opts = {});

// F_A(x + k) >= F_A(x) on pairs (x, x+k) with k in K; the strict variant
// additionally demands a positive gap when F_A(x) is positive and k is not
// tiny.
GaugeCheckReport monotonicity_check(const HSet& A,
                                    const std::vector<std::pair<Vector, Vector>>& pairs,
                                    bool strict, const GaugeOptions& opts = {});

// Oscillation (max - min) of the gauge over K cap ball(x0, r) per radius,
// with boundary-structure sampling so jumps confined to the cone boundary are
// seen. Non-vanishing oscillation as r -> 0 flags a discontinuity.
std::vector<std::pair<double, double>> continuity_probe(const HSet& A, const Vector& x0,
                                                        const std::vector<double>& radii,
                                                        std::uint64_t seed = kDefaultSeed,
                                                        int samples_per_radius = 64,
                                                        const GaugeOptions& opts = {});

enum class StrictDomain { None, InteriorK, PositiveGauge };

// Quasiconcavity on sampled triples (x, x', lambda):
//   gauge(lambda x + (1-lambda) x') >= min(gauge x, gauge x') - tol,
// with a strict-gap variant restricted to int K or to {F_A > 0}. Inputs
// closer than the strictness margin are skipped, not counted as violations.
GaugeCheckReport quasiconcavity_check(const HSet& A,
                                      const std::vector<std::tuple<Vector, Vector, double>>& triples,
                                      StrictDomain strict = StrictDomain::None,
                                      const GaugeOptions& opts = {});

} // namespace suppdiff
