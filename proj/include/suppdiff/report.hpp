// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/types.hpp>

#include <nlohmann/json.hpp>

namespace suppdiff {

// Insertion-ordered JSON keeps reports byte-stable across runs.
using Json = nlohmann::ordered_json;

inline Json to_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline Vector vector_from_json(const Json& a) {
    Vector v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a.at(i).get<double>();
    return v;
}

} // namespace suppdiff
