// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#include <suppdiff/cone.hpp>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace suppdiff {

std::string to_string(ConeKind k) {
    switch (k) {
        case ConeKind::Orthant: return "orthant";
        case ConeKind::Polyhedral: return "polyhedral";
        case ConeKind::Lorentz: return "lorentz";
    }
    return "?";
}

Cone::Cone(ConeKind kind, int dim) : kind_(kind), dim_(dim) {
    if (dim < 2) throw std::invalid_argument("Cone: dimension must be >= 2");
}

Cone Cone::orthant(int dim) {
    Cone K(ConeKind::Orthant, dim);
    K.normals_.reserve(dim);
    K.generators_.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        Vector e = Vector::Zero(dim);
        e[i] = 1.0;
        K.normals_.push_back(e);
        K.generators_.push_back(e);
    }
    K.interior_point_ = Vector::Ones(dim);
    return K;
}

Cone Cone::lorentz(int dim) {
    Cone K(ConeKind::Lorentz, dim);
    K.interior_point_ = Vector::Zero(dim);
    K.interior_point_[dim - 1] = 1.0;
    // Angular discretization of the boundary; only used for sampling grids.
    const int m = 16;
    if (dim == 3) {
        for (int i = 0; i < m; ++i) {
            double th = 2.0 * M_PI * i / m;
            Vector g(3);
            g << std::cos(th), std::sin(th), 1.0;
            K.generators_.push_back(g / g.norm());
        }
    } else {
        for (int i = 0; i < dim - 1; ++i) {
            for (double s : {1.0, -1.0}) {
                Vector g = Vector::Zero(dim);
                g[i] = s;
                g[dim - 1] = 1.0;
                K.generators_.push_back(g / g.norm());
            }
        }
    }
    return K;
}

namespace {

// Extreme rays of {x : <x, n_i> >= 0} for a pointed full-dimensional cone:
// each ray is the kernel of p-1 linearly independent active constraints,
// kept when it satisfies all the remaining inequalities.
std::vector<Vector> enumerate_rays(int p, const std::vector<Vector>& normals) {
    const int m = static_cast<int>(normals.size());
    std::vector<Vector> rays;

    std::vector<int> idx(p - 1);
    // iterate over all (p-1)-subsets of {0..m-1}
    std::vector<int> comb(p - 1);
    for (int i = 0; i < p - 1; ++i) comb[i] = i;
    auto advance = [&]() -> bool {
        int i = p - 2;
        while (i >= 0 && comb[i] == m - (p - 1) + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < p - 1; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    if (m < p - 1) return rays;

    do {
        Eigen::MatrixXd M(p - 1, p);
        for (int i = 0; i < p - 1; ++i) M.row(i) = normals[comb[i]].transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        lu.setThreshold(1e-10);
        if (lu.rank() != p - 1) continue;
        Eigen::MatrixXd ker = lu.kernel();
        if (ker.cols() != 1) continue;
        Vector v = ker.col(0);
        double n = v.norm();
        if (n < 1e-12) continue;
        v /= n;
        for (double s : {1.0, -1.0}) {
            Vector w = s * v;
            bool ok = true;
            for (const auto& nv : normals)
                if (nv.dot(w) < -1e-10 * nv.norm()) { ok = false; break; }
            if (!ok) continue;
            bool dup = false;
            for (const auto& r : rays)
                if (r.dot(w) > 1.0 - 1e-9) { dup = true; break; }
            if (!dup) rays.push_back(w);
        }
    } while (advance());

    std::sort(rays.begin(), rays.end(), [](const Vector& a, const Vector& b) {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return rays;
}

} // namespace

Cone Cone::polyhedral(int dim, std::vector<Vector> normals) {
    Cone K(ConeKind::Polyhedral, dim);
    if (normals.empty()) throw std::invalid_argument("polyhedral cone: no normals");
    Eigen::MatrixXd N(normals.size(), dim);
    for (std::size_t i = 0; i < normals.size(); ++i) {
        require_dim(normals[i], dim, "polyhedral normal");
        require_finite(normals[i], "polyhedral normal");
        if (normals[i].norm() < 1e-14)
            throw std::invalid_argument("polyhedral cone: zero normal");
        N.row(i) = normals[i].transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
    lu.setThreshold(1e-10);
    if (lu.rank() != dim)
        throw std::invalid_argument(
            "polyhedral cone: normals do not span the space (cone not pointed)");

    K.normals_ = std::move(normals);
    K.generators_ = enumerate_rays(dim, K.normals_);
    if (K.generators_.empty())
        throw std::invalid_argument("polyhedral cone: no extreme rays found");

    Vector w = Vector::Zero(dim);
    for (const auto& g : K.generators_) w += g;
    for (const auto& n : K.normals_)
        if (n.dot(w) <= 1e-10 * n.norm() * w.norm())
            throw std::invalid_argument("polyhedral cone: empty interior");
    K.interior_point_ = w / w.norm();
    return K;
}

bool Cone::contains(const Vector& x) const {
    require_dim(x, dim_, "cone_contains");
    switch (kind_) {
        case ConeKind::Orthant:
            return (x.array() >= 0.0).all();
        case ConeKind::Polyhedral:
            for (const auto& n : normals_)
                if (n.dot(x) < 0.0) return false;
            return true;
        case ConeKind::Lorentz: {
            double t = x[dim_ - 1];
            return t >= 0.0 && t * t >= x.head(dim_ - 1).squaredNorm();
        }
    }
    return false;
}

bool Cone::interior_contains(const Vector& x) const {
    require_dim(x, dim_, "cone_interior_contains");
    switch (kind_) {
        case ConeKind::Orthant:
            return (x.array() > 0.0).all();
        case ConeKind::Polyhedral:
            for (const auto& n : normals_)
                if (n.dot(x) <= 0.0) return false;
            return true;
        case ConeKind::Lorentz: {
            double t = x[dim_ - 1];
            return t > 0.0 && t * t > x.head(dim_ - 1).squaredNorm();
        }
    }
    return false;
}

bool Cone::dual_contains(const Vector& y) const {
    require_dim(y, dim_, "dual_cone_contains");
    switch (kind_) {
        case ConeKind::Orthant:
            return (y.array() >= 0.0).all(); // self-dual
        case ConeKind::Lorentz: {
            double t = y[dim_ - 1]; // self-dual
            return t >= 0.0 && t * t >= y.head(dim_ - 1).squaredNorm();
        }
        case ConeKind::Polyhedral:
            for (const auto& g : generators_)
                if (g.dot(y) < 0.0) return false;
            return true;
    }
    return false;
}

bool Cone::strict_dual_contains(const Vector& y) const {
    require_dim(y, dim_, "strict_dual_contains");
    switch (kind_) {
        case ConeKind::Orthant:
            return (y.array() > 0.0).all();
        case ConeKind::Lorentz: {
            double t = y[dim_ - 1];
            return t > 0.0 && t * t > y.head(dim_ - 1).squaredNorm();
        }
        case ConeKind::Polyhedral:
            for (const auto& g : generators_)
                if (g.dot(y) <= 0.0) return false;
            return true;
    }
    return false;
}

double Cone::margin(const Vector& x) const {
    require_dim(x, dim_, "cone margin");
    switch (kind_) {
        case ConeKind::Orthant:
            return x.minCoeff();
        case ConeKind::Polyhedral: {
            double m = kInf;
            for (const auto& n : normals_) m = std::min(m, n.dot(x) / n.norm());
            return m;
        }
        case ConeKind::Lorentz:
            return (x[dim_ - 1] - x.head(dim_ - 1).norm()) / std::sqrt(2.0);
    }
    return -kInf;
}

double Cone::dual_margin(const Vector& y) const {
    require_dim(y, dim_, "dual margin");
    switch (kind_) {
        case ConeKind::Orthant:
            return y.minCoeff();
        case ConeKind::Lorentz:
            return (y[dim_ - 1] - y.head(dim_ - 1).norm()) / std::sqrt(2.0);
        case ConeKind::Polyhedral: {
            double m = kInf;
            for (const auto& g : generators_) m = std::min(m, g.dot(y));
            return m;
        }
    }
    return -kInf;
}

Cone Cone::dual() const {
    switch (kind_) {
        case ConeKind::Orthant:
        case ConeKind::Lorentz:
            return *this;
        case ConeKind::Polyhedral:
            return Cone::polyhedral(dim_, generators_);
    }
    throw std::logic_error("unreachable");
}

Vector Cone::sample_point(Rng& rng, double radius) const {
    switch (kind_) {
        case ConeKind::Orthant: {
            Vector x(dim_);
            for (int i = 0; i < dim_; ++i) x[i] = radius * rng.uniform();
            return x;
        }
        case ConeKind::Polyhedral: {
            Vector x = Vector::Zero(dim_);
            for (const auto& g : generators_) x += radius * rng.uniform() * g;
            return x * (1.0 / std::max<std::size_t>(1, generators_.size()) *
                        (0.5 + rng.uniform()));
        }
        case ConeKind::Lorentz: {
            double t = radius * rng.uniform();
            Vector u = rng.unit_vector(dim_ - 1);
            double rho = t * rng.uniform(); // strictly inside with margin
            Vector x(dim_);
            x.head(dim_ - 1) = rho * u;
            x[dim_ - 1] = t;
            return x;
        }
    }
    return Vector::Zero(dim_);
}

Vector Cone::sample_direction(Rng& rng) const {
    // 50/50 interior ray vs boundary ray; nonzero by construction.
    if (rng.uniform() < 0.5) return sample_interior_direction(rng);
    return boundary_direction(rng);
}

Vector Cone::sample_interior_direction(Rng& rng) const {
    Vector d = sample_point(rng, 1.0) + 0.25 * interior_point_;
    double n = d.norm();
    if (n < 1e-12 || !interior_contains(d)) return interior_point_;
    return d / n;
}

Vector Cone::boundary_direction(Rng& rng) const {
    switch (kind_) {
        case ConeKind::Orthant: {
            // zero out a nonempty proper subset of coordinates
            Vector d(dim_);
            bool any = false;
            for (int i = 0; i < dim_; ++i) d[i] = rng.uniform();
            int z = 1 + static_cast<int>(rng.index(dim_ - 1));
            for (int k = 0; k < z; ++k) { d[rng.index(dim_)] = 0.0; any = true; }
            (void)any;
            if (d.norm() < 1e-12) d[rng.index(dim_)] = 1.0;
            return d / d.norm();
        }
        case ConeKind::Polyhedral: {
            // extreme rays and edges of 2-faces
            const auto& g = generators_;
            Vector d = g[rng.index(g.size())];
            if (g.size() > 1 && rng.uniform() < 0.5) {
                Vector d2 = d + rng.uniform() * g[rng.index(g.size())];
                // keep only if still on the boundary
                bool bd = false;
                for (const auto& n : normals_)
                    if (std::abs(n.dot(d2)) < 1e-12 * n.norm() * d2.norm()) bd = true;
                if (bd) d = d2;
            }
            return d / d.norm();
        }
        case ConeKind::Lorentz: {
            Vector u = rng.unit_vector(dim_ - 1);
            Vector d(dim_);
            d.head(dim_ - 1) = u;
            d[dim_ - 1] = u.norm(); // exactly on the boundary
            return d / d.norm();
        }
    }
    return interior_point_;
}

std::optional<Vector> Cone::sample_boundary_near(const Vector& x0, double r, Rng& rng) const {
    require_dim(x0, dim_, "sample_boundary_near");
    switch (kind_) {
        case ConeKind::Orthant:
        case ConeKind::Polyhedral: {
            const auto& ns = normals_;
            // candidate faces within reach
            std::vector<std::size_t> close;
            for (std::size_t i = 0; i < ns.size(); ++i)
                if (std::abs(ns[i].dot(x0)) / ns[i].norm() <= r) close.push_back(i);
            if (close.empty()) return std::nullopt;
            for (int attempt = 0; attempt < 16; ++attempt) {
                std::size_t i = close[rng.index(close.size())];
                Vector y = x0 + r * rng.unit_vector(dim_);
                const Vector& n = ns[i];
                y -= (n.dot(y) / n.squaredNorm()) * n; // project onto the face plane
                if (contains(y)) return y;
            }
            return std::nullopt;
        }
        case ConeKind::Lorentz: {
            double rho0 = x0.head(dim_ - 1).norm();
            double t0 = x0[dim_ - 1];
            // distance to the boundary surface is ~ (t0 - rho0)/sqrt(2)
            if ((t0 - rho0) / std::sqrt(2.0) > r) return std::nullopt;
            Vector u;
            if (rho0 > 1e-12) {
                u = (x0.head(dim_ - 1) / rho0).eval();
                // perturb the direction within the reachable arc
                Vector w = rng.unit_vector(dim_ - 1);
                double alpha = (t0 > 1e-12) ? r / t0 : 1.0;
                u += alpha * rng.uniform(-1.0, 1.0) * w;
                if (u.norm() < 1e-12) u = rng.unit_vector(dim_ - 1);
                u /= u.norm();
            } else {
                u = rng.unit_vector(dim_ - 1);
            }
            double rho = std::max(0.0, t0 + r * rng.uniform(-1.0, 1.0));
            Vector y(dim_);
            y.head(dim_ - 1) = rho * u;
            // smallest t with t*t >= ||y~||^2, so membership holds exactly
            double s = y.head(dim_ - 1).squaredNorm();
            double t = std::sqrt(s);
            while (t * t < s) t = std::nextafter(t, kInf);
            while (t > 0.0) {
                double down = std::nextafter(t, 0.0);
                if (down * down >= s) t = down;
                else break;
            }
            y[dim_ - 1] = t;
            return y;
        }
    }
    return std::nullopt;
}

nlohmann::json Cone::to_json() const {
    nlohmann::json j;
    j["variant"] = to_string(kind_);
    j["dim"] = dim_;
    if (kind_ == ConeKind::Polyhedral) {
        nlohmann::json ns = nlohmann::json::array();
        for (const auto& n : normals_) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index i = 0; i < n.size(); ++i) row.push_back(n[i]);
            ns.push_back(row);
        }
        j["normals"] = ns;
    }
    return j;
}

Cone Cone::from_json(const nlohmann::json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    const int dim = j.at("dim").get<int>();
    if (variant == "orthant") return Cone::orthant(dim);
    if (variant == "lorentz") return Cone::lorentz(dim);
    if (variant == "polyhedral") {
        std::vector<Vector> normals;
        for (const auto& row : j.at("normals")) {
            Vector n(dim);
            if (static_cast<int>(row.size()) != dim)
                throw std::invalid_argument("cone JSON: normal has wrong length");
            for (int i = 0; i < dim; ++i) n[i] = row.at(i).get<double>();
            normals.push_back(n);
        }
        return Cone::polyhedral(dim, std::move(normals));
    }
    throw std::invalid_argument("cone JSON: unknown variant '" + variant + "'");
}

} // namespace suppdiff
