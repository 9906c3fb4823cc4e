// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0
//
// Independent brute-force oracles used to freeze expected values. These stay
// deliberately dumb (dense grids, no search heuristics) and must not share
// code with the library paths they check.

#pragma once

#include <suppdiff/hset.hpp>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using suppdiff::Vector;

struct BruteMax {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<Vector> near_argmax; // within tol of the max
};

// Dense-grid maximization of <., xstar> over {member} in [lo, hi]^2.
inline BruteMax brute_max_2d(const std::function<bool(const Vector&)>& member,
                             const Vector& xstar, double lo, double hi, double step,
                             double tol) {
    BruteMax out;
    std::vector<Vector> pts;
    const int n = static_cast<int>((hi - lo) / step + 0.5);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Vector v(2);
            v << lo + i * step, lo + j * step;
            if (!member(v)) continue;
            double val = xstar.dot(v);
            if (val > out.value) out.value = val;
            pts.push_back(v);
        }
    for (const auto& v : pts)
        if (xstar.dot(v) >= out.value - tol) out.near_argmax.push_back(v);
    return out;
}

inline double diameter(const std::vector<Vector>& pts) {
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            d = std::max(d, (pts[i] - pts[j]).norm());
    return d;
}

// Central finite difference of a scalar function of one vector argument.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double h) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vector e = Vector::Zero(x.size());
        e[i] = h;
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h);
    }
    return g;
}

} // namespace oracle
