// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace suppdiff {

// Deterministic splitmix64 stream. All sampling in the library goes through
// this generator so that a (scenario, seed) pair reproduces results exactly,
// independent of platform and of evaluation order (see fork()).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 3735928559ull) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return lo * std::exp(uniform() * std::log(hi / lo));
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    double gaussian() {
        // Box-Muller, no spare caching (keeps forked streams reproducible).
        double u1 = uniform(), u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Eigen::VectorXd gaussian_vector(Eigen::Index p) {
        Eigen::VectorXd v(p);
        for (Eigen::Index i = 0; i < p; ++i) v[i] = gaussian();
        return v;
    }

    Eigen::VectorXd unit_vector(Eigen::Index p) {
        Eigen::VectorXd v = gaussian_vector(p);
        double n = v.norm();
        if (n < 1e-12) { v.setZero(); v[0] = 1.0; return v; }
        return v / n;
    }

    // Independent substream identified by a tag; used to make parallel grid
    // evaluation order-independent.
    Rng fork(std::uint64_t tag) const {
        Rng r(state_ ^ (0xD1B54A32D192ED03ull * (tag + 0x632BE59BD9B4E019ull)));
        r.next_u64();
        return r;
    }

private:
    std::uint64_t state_;
};

} // namespace suppdiff
