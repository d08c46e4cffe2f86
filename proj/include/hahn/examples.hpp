#pragma once

#include "hahn/cmap.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hahn {

struct CatalogEntry {
    std::string name;
    AdditiveMap c;
    ConstantsVerdict expected;
};

// (k, Gamma, c) instances covering all three constants verdicts.
std::vector<CatalogEntry> constants_catalog();

struct ExampleReport {
    std::string id;
    std::string anchor;
    bool pass = false;
    std::map<std::string, std::string> artifacts;
    std::uint64_t seed = 0;
};

// E1..E6 in identifier order; `only` restricts to one identifier.
std::vector<ExampleReport> run_example_suite(long bound = 6, const std::optional<std::string>& only = std::nullopt);

}  // namespace hahn
