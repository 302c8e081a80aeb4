#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mge/expr.hpp"

namespace mge {

struct NamedConstruction {
  std::string label;
  std::string recipe;
  std::uint64_t order = 0;
  std::string anchor;
  std::vector<std::string> parameters;  // family parameters; recipe holds "{theta}"
};

// Registry loaded from the data file compiled into the library.
const std::vector<NamedConstruction>& registry();
const NamedConstruction& named_construction(std::string_view label);

// "LABEL" or "LABEL:param" for parameterised families. Throws UnknownLabel.
GroupExpr named_group(std::string_view label);
std::string named_recipe(std::string_view label);
std::uint64_t named_order(std::string_view label);

// The list of groups of order n, n in [1, 15]. Throws OutOfRange.
std::vector<std::string> table1_labels(std::uint32_t n);
std::vector<GroupExpr> groups_of_order(std::uint32_t n);

struct ExpectedMinimal {
  std::uint32_t n;
  std::uint64_t order;
  std::vector<std::string> labels;
};
// Least order containing all groups of order n, with the groups attaining it.
const std::vector<ExpectedMinimal>& table2();
// Least order containing all groups of order <= n.
const std::vector<ExpectedMinimal>& table4();
// Example groups attaining table4 for n <= 11.
const std::vector<ExpectedMinimal>& table5();
// Constructions attaining table4 for n >= 12.
const std::vector<ExpectedMinimal>& large_constructions();

struct PerfectSeed {
  std::string label;
  std::uint64_t order;
  std::uint64_t center_order;
};
const std::vector<PerfectSeed>& perfect_seeds();

std::uint64_t pbound(std::uint64_t p, std::uint64_t k);
std::uint64_t nbound(std::uint64_t n);
std::uint64_t collection_bound(std::uint64_t n);

}  // namespace mge
