// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/hset.hpp>
#include <suppdiff/rng.hpp>
#include <suppdiff/types.hpp>

#include <optional>
#include <vector>

namespace suppdiff {

enum class SupportStatus { Finite, PlusInfinity, BoundarySuspect };

std::string to_string(SupportStatus s);

struct SupportEval {
    double value = 0.0;
    SupportStatus status = SupportStatus::Finite;
    std::optional<Vector> maximizer_hint; // present only when it certifies value
    bool truncated = false;               // box expansion budget exhausted
};

// Finite cluster representation of the maximizer set of <., xstar> over A.
// is_singleton certifies differentiability of the support function at xstar
// (interior of the domain); truncated results never count as singletons.
struct ArgmaxSet {
    std::vector<Vector> representatives;
    double diameter = 0.0;
    bool is_singleton = false;
    bool truncated = false;
    bool whole_hull = false; // sentinel for the subdifferential at 0
    double sigma = 0.0;      // support value the representatives certify
};

enum class DiffVerdict { Differentiable, NotDifferentiable, Indeterminate };

std::string to_string(DiffVerdict v);

struct DifferentiabilityResult {
    DiffVerdict verdict = DiffVerdict::Indeterminate;
    std::optional<Vector> gradient; // the unique maximizer when differentiable
    ArgmaxSet argmax;
};

enum class CompactnessVerdict { Compact, Unbounded, Indeterminate };

std::string to_string(CompactnessVerdict v);

struct SupportOptions {
    Tolerances tol{};
    std::uint64_t seed = kDefaultSeed;
    bool use_oracle = true; // false forces the numeric path (oracle cross-checks)
    int starts = 32;        // multistart count (low-discrepancy)
    int max_expand = 6;     // box doublings before giving up
    int rng_dirs = 8;       // random directions per step scale
    double step_floor_frac = 1e-9;
    double polish_floor_frac = 1e-12; // terminal radius of the boundary walk
};

// sup{<u, xstar> : u in A}. Domain classification is margin-based: strictly
// inside the dual domain -> finite; strictly outside with positive margin ->
// +infinity; near the boundary -> BoundarySuspect with a best-effort value.
SupportEval support_value(const HSet& A, const Vector& xstar, const SupportOptions& opts = {});

// Clustered near-maximizers at xstar (requires -xstar strictly inside the
// strict dual of the recession cone when A carries one). The diameter is
// measured after widening the candidate set along its principal directions,
// so segment-shaped maximizer sets report their true extent.
ArgmaxSet argmax_set(const HSet& A, const Vector& xstar, const SupportOptions& opts = {});

// Same representatives as argmax_set; their convex hull is the
// subdifferential of the support function. At xstar = 0 the whole closed
// convex hull is the subdifferential and a sentinel is returned instead.
ArgmaxSet subdifferential(const HSet& A, const Vector& xstar, const SupportOptions& opts = {});

// Differentiability at xstar decided by the singleton test; truncation gives
// Indeterminate, never a false negative.
DifferentiabilityResult is_differentiable_at(const HSet& A, const Vector& xstar,
                                             const SupportOptions& opts = {});

// Componentwise central difference of the support function. Every probe must
// stay strictly inside the finite domain, otherwise this throws.
Vector gradient_fd(const HSet& A, const Vector& xstar, double h,
                   const SupportOptions& opts = {});

// Grows the search box geometrically and watches the extent of the
// near-maximizer slab: extent growing with the box means the subdifferential
// is unbounded (xstar sits on the boundary of the support domain).
CompactnessVerdict subdifferential_compactness_probe(const HSet& A, const Vector& xstar,
                                                     const SupportOptions& opts = {});

// Deterministic lattice of n functionals strictly inside -K# (the interior
// of the support-function domain of an (H)-set with cone K).
std::vector<Vector> dual_interior_grid(const Cone& K, int n, double scale = 1.0);

} // namespace suppdiff
