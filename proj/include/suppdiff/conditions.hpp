// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/hset.hpp>
#include <suppdiff/report.hpp>
#include <suppdiff/support.hpp>

#include <string>
#include <vector>

namespace suppdiff {

enum class ConditionVerdict { HoldsOnSample, Violated };

std::string to_string(ConditionVerdict v);

struct ConditionWitness {
    std::vector<Vector> points; // (a, k) or (x, x') depending on the condition
    double lambda = 0.5;
};

// Verdict of a sampled geometric-condition check. A Violated verdict always
// carries at least one witness whose conclusion re-fails deterministically by
// direct membership evaluations; HoldsOnSample is explicitly non-conclusive.
struct ConditionReport {
    std::string condition_id;
    ConditionVerdict verdict = ConditionVerdict::HoldsOnSample;
    std::vector<ConditionWitness> witnesses;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    std::size_t unresolved = 0; // mids too marginal to certify either way

    Json to_json() const;
};

struct SamplerConfig {
    int samples = 1000;
    std::uint64_t seed = kDefaultSeed;
    Tolerances tol{};
    SupportOptions support{}; // for argmax-based boundary candidates
    std::vector<ConditionWitness> targeted; // extra deterministic probes
    int direction_grid = 64;  // cone directions for translation probes
    double pair_separation_frac = 0.02; // skip closer midpoint pairs
};

// Heuristic relative-interior probe: shrinking balls intersected with K must
// stay inside A for some radius level. One-sided: sound on the certified
// "false" side only (used via ray certification in the checkers).
bool check_interior_rel_K(const HSet& A, const Vector& x, const SamplerConfig& cfg = {});

// Sampled checker for the named condition:
//   H       translation stability of A along K
//   fp-ssc  A + (K \ 0) inside the K-relative interior of A
//   r-s     A + (K \ 0) inside the interior of A
//   r-sa    midpoints of distinct members (in int K) land in int A
//   r-sas   midpoints of distinct members land in the K-relative interior
//   r-sb    midpoints of distinct boundary points avoid the boundary
//   rs1a    midpoints of distinct members land in the (relative) interior
//   r-s1a   midpoints of distinct relative-boundary points avoid it
//   rs2     midpoints of distinct members admit a K-translation into A
//   rs2c    midpoints of distinct non-translatable points become translatable
//   fps-z   midpoints of distinct support points leave the support set
//   fps     same with the support set taken over the declared cone's dual
ConditionReport check_condition(const HSet& A, const std::string& condition_id,
                                const SamplerConfig& cfg = {});

struct HarnessReport {
    std::string name;
    bool alarm = false;         // replayable counterexample to an implication
    bool indeterminate = false; // truncation / resolution prevented a verdict
    Json details;

    int exit_code() const { return alarm ? 2 : (indeterminate ? 3 : 0); }
};

// Differentiability implies convexity battery: checks the translation-
// stability hypothesis, classifies differentiability on the dual grid, and
// when everything is differentiable asserts the convexity and midpoint
// samplers; in dimension 2 it also audits the converse direction.
HarnessReport harness_fact14(const HSet& A, const std::vector<Vector>& dual_grid,
                             const SamplerConfig& cfg = {});

// Midpoint-interiority implies smoothness battery: under a passing r-sas
// sampler, convexity, grid differentiability and fp-ssc must all pass.
HarnessReport harness_prop_suf(const HSet& A, const std::vector<Vector>& dual_grid,
                               const SamplerConfig& cfg = {});

struct SESets {
    std::vector<Vector> S_samples; // support points over the dual grid
    std::vector<Vector> E_samples; // boundary points with no inward K-translation
    bool S_in_E = true;
    bool E_in_boundary = true;
    std::vector<Vector> rs2_violations; // E-points witnessing a failed translation
};

// Samples the support-point set S and the non-translatable set E of a convex
// fixture and asserts the sampled inclusions S in E in boundary.
SESets sample_S_and_E_sets(const HSet& C, const std::vector<Vector>& dual_grid,
                           const SamplerConfig& cfg = {});

// Audits the implication chain r-s1a => rs2c <=> rs2 => fps-z on a convex
// fixture: a premise that holds on samples combined with a certified
// violation of its conclusion raises an alarm.
HarnessReport harness_rem1(const HSet& C, const SamplerConfig& cfg = {});

// -- sampling utilities shared with the cost layer -------------------------

// Members of A: translation pushes from the witness, box rejection, boundary
// localizations and structural ray points; deterministic given the seed.
std::vector<Vector> sample_members(const HSet& A, int count, std::uint64_t seed);

// Boundary points of A located by bisection along rays from deep members;
// includes the minimal points of A along the cone's extreme rays and the
// argmax extremes for a few canonical dual directions.
std::vector<Vector> sample_boundary(const HSet& A, int count, std::uint64_t seed,
                                    const SupportOptions& support = {});

} // namespace suppdiff
