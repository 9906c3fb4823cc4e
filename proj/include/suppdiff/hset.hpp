// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/cone.hpp>
#include <suppdiff/types.hpp>

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace suppdiff {

using MemberFn = std::function<bool(const Vector&)>;
using ScalarFn = std::function<double(const Vector&)>;

// A closed set A ordered by a structural cone K, given by a membership oracle
// plus optional closed-form support/gauge oracles. When satisfies_h is set,
// the pair (A, K) is stable under K-translation (A = A + K, A contained in
// K minus the origin) and the recession cone of A equals K; the bounded
// catalog entries carry no cone and only exercise the general support path.
struct HSet {
    std::optional<Cone> cone;
    MemberFn member;
    std::string label;
    std::string note;
    std::optional<ScalarFn> support_oracle; // extended value, +inf outside the domain
    std::optional<ScalarFn> gauge_oracle;   // defined on K
    Vector witness;                         // a certified member
    double bound_hint = 10.0;               // sampling / bracketing scale
    bool satisfies_h = true;
    bool declared_convex = false;

    int dim() const { return static_cast<int>(witness.size()); }

    const Cone& K() const {
        if (!cone) throw std::logic_error("HSet '" + label + "' has no recession cone");
        return *cone;
    }

    bool contains(const Vector& x) const {
        require_dim(x, dim(), "HSet member");
        return member(x);
    }
};

// Production function on the nonnegative orthant with the axiom flags its
// catalog entry claims. Strictness/continuity probe hints let samplers replay
// the canonical counterexample witnesses deterministically.
struct ProductionFn {
    ScalarFn eval;
    std::string label;
    std::string note;
    int dim = 2;
    std::set<std::string> claimed_axioms;

    std::vector<Vector> continuity_suspects;              // candidate jump points
    std::vector<std::pair<Vector, Vector>> strict_pairs;  // (x', x) with x >= x'
    std::vector<std::array<Vector, 2>> strict_triples;    // midpoint probes

    double operator()(const Vector& x) const {
        require_dim(x, dim, "ProductionFn eval");
        return eval(x);
    }
    bool claims(const std::string& ax) const { return claimed_axioms.count(ax) > 0; }
};

// A = a + K for a in K, a != 0. Attaches the linear support oracle and, for
// polyhedral/orthant and Lorentz cones, the closed-form gauge.
HSet shifted_cone(const Vector& a, const Cone& K);

// A = {x in K : F(x) >= gamma} for the orthant K; gamma > 0 and a membership
// witness are required (feasibility of the level is the caller's knowledge).
HSet level_set(const ProductionFn& F, double gamma, const Vector& witness);

double default_bound_hint(const Vector& witness);

} // namespace suppdiff
