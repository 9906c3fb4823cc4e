// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/rng.hpp>
#include <suppdiff/types.hpp>

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace suppdiff {

enum class ConeKind { Orthant, Polyhedral, Lorentz };

std::string to_string(ConeKind k);

// Pointed closed convex cone with nonempty interior, in one of three
// structural forms:
//   Orthant     x_i >= 0 for all i
//   Polyhedral  <x, n_i> >= 0 for given normals n_i (halfspace form)
//   Lorentz     x_p >= ||(x_1..x_{p-1})||
//
// Membership, interior and dual-cone queries are closed-form inequality
// checks. For the polyhedral variant the extreme rays are enumerated once at
// construction (double description at small p), so dual queries are exact
// inequality checks against the generators. Pointedness and nonempty interior
// are certified at construction; violations throw.
class Cone {
public:
    static Cone orthant(int dim);
    static Cone lorentz(int dim);
    static Cone polyhedral(int dim, std::vector<Vector> normals);

    int dim() const { return dim_; }
    ConeKind kind() const { return kind_; }

    bool contains(const Vector& x) const;
    bool interior_contains(const Vector& x) const;
    bool dual_contains(const Vector& y) const;        // y in K+
    bool strict_dual_contains(const Vector& y) const; // y in K# = int K+

    // Signed distance-like margins, positive inside the respective interior.
    // Used by callers that need a robustness band; the boolean queries above
    // stay exact.
    double margin(const Vector& x) const;      // w.r.t. K
    double dual_margin(const Vector& y) const; // w.r.t. K+

    // Certified interior point (all-ones for the orthant, last basis vector
    // for Lorentz, normalized generator sum for polyhedral).
    const Vector& interior_point() const { return interior_point_; }

    // Extreme rays. For Lorentz this is a fixed angular discretization of the
    // boundary circle (the cone is not finitely generated); polyhedral and
    // orthant generators are exact.
    const std::vector<Vector>& generators() const { return generators_; }

    // Halfspace normals (e_i for the orthant; empty for Lorentz).
    const std::vector<Vector>& normals() const { return normals_; }

    bool polyhedral_kind() const { return kind_ != ConeKind::Lorentz; }

    // Dual cone as a Cone value. Orthant and Lorentz are self-dual; the dual
    // of a halfspace-form polyhedral cone is generated by its normals.
    Cone dual() const;

    // -- sampling helpers (structural, no rejection on the boundary) --------

    // Point of K, biased toward the ball of the given radius.
    Vector sample_point(Rng& rng, double radius) const;

    // Nonzero direction of K (mix of interior and boundary rays).
    Vector sample_direction(Rng& rng) const;

    // Direction in int K.
    Vector sample_interior_direction(Rng& rng) const;

    // Boundary point of K within distance ~r of x0, using the face structure
    // (coordinate faces, halfspace faces, or the Lorentz angle
    // parametrization). Returns nullopt when no boundary lies that close.
    std::optional<Vector> sample_boundary_near(const Vector& x0, double r, Rng& rng) const;

    // Ray through a boundary point (parametrized) -- used to build boundary
    // direction grids.
    Vector boundary_direction(Rng& rng) const;

    nlohmann::json to_json() const;
    static Cone from_json(const nlohmann::json& j);

private:
    Cone(ConeKind kind, int dim);

    ConeKind kind_;
    int dim_;
    std::vector<Vector> normals_;    // halfspace form (empty for Lorentz)
    std::vector<Vector> generators_; // extreme rays (discretized for Lorentz)
    Vector interior_point_;
};

} // namespace suppdiff
