// Copyright (c) 2026 suppdiff contributors
// Licensed under Apache 2.0

#pragma once

#include <suppdiff/hset.hpp>

#include <string>
#include <vector>

namespace suppdiff {

struct FixtureInfo {
    std::string name;
    std::string kind; // "set" or "production"
    int dim;
    bool satisfies_h; // sets only
    std::string description;
};

// Catalog of named sets and production functions with their closed-form
// oracles. Unknown names throw std::invalid_argument.
HSet set_fixture(const std::string& name);
ProductionFn production_fixture(const std::string& name);
bool is_set_fixture(const std::string& name);
bool is_production_fixture(const std::string& name);
std::vector<FixtureInfo> list_fixtures();

} // namespace suppdiff
