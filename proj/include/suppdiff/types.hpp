// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>
#include <limits>
#include <stdexcept>
#include <string>

namespace suppdiff {

using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::uint64_t kDefaultSeed = 3735928559ull;

// Tolerance knobs shared by the numeric layers. Values are the project
// defaults; the CLI exposes --tol-* overrides.
struct Tolerances {
    double val_rel = 1e-8;      // support-value tolerance: val_rel * (1 + |sigma|)
    double cluster_frac = 1e-5; // cluster merge radius: cluster_frac * bound_hint
    double diam_frac = 1e-4;    // singleton threshold: diam_frac * bound_hint
    double bis_rel = 1e-10;     // gauge bisection: bis_rel * (1 + estimate)
    double strict_frac = 1e-7;  // strict-inequality margin: strict_frac * bound_hint
    double boundary_bis = 1e-9; // boundary point localization
    double gauge_floor = 1e-12; // below this t the gauge is declared 0

    double tol_val(double sigma) const { return val_rel * (1.0 + std::abs(sigma)); }
    double tol_cluster(double bound_hint) const { return cluster_frac * bound_hint; }
    double tol_diam(double bound_hint) const { return diam_frac * bound_hint; }
    double strict_margin(double bound_hint) const { return strict_frac * bound_hint; }
};

inline void require_dim(const Vector& x, Eigen::Index p, const char* what) {
    if (x.size() != p)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(p) + ")");
}

inline void require_finite(const Vector& x, const char* what) {
    if (!x.allFinite())
        throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

} // namespace suppdiff
