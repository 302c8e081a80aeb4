#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mge/group.hpp"
#include "mge/morphisms.hpp"

namespace mge {

struct CatalogEntry {
  std::string recipe;
  TablePtr group;  // realized from recipe
  std::string fingerprint;
  std::string table_hash;
};

// Isomorphism classes of one order, sorted by fingerprint text then recipe.
struct Catalog {
  std::uint32_t order = 0;
  std::string method;  // "cyclic-extension" | "oracle" | "paper-table"
  std::vector<CatalogEntry> entries;

  nlohmann::json to_json() const;
};

// Candidate pairs for extending `base` by a cyclic group of order p:
// t n t^-1 = alpha(n) and t^p = a, with alpha^p = conjugation by a and
// alpha(a) = a. Pairs are reduced up to the obvious equivalences, so several
// may still give isomorphic groups.
struct ExtensionProblem {
  TablePtr base;
  std::uint32_t p = 0;
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> pairs;
};

ExtensionProblem extension_problem(const TablePtr& base, std::uint32_t p);
// The group of order |base| * p for one pair; element n t^i has index n + |base| i.
TablePtr extension_group(const TablePtr& base, std::uint32_t p, const std::vector<std::uint32_t>& alpha, std::uint32_t a);
// All extensions up to isomorphism.
std::vector<TablePtr> cyclic_extensions(const TablePtr& base, std::uint32_t p);

struct EnumerationConfig {
  int tier = 1;
  std::string cache_dir;  // empty: no disk cache
  std::uint32_t hard_limit = 256;
};
// Tier and cache directory from MGE_TIER and MGE_CACHE_DIR.
EnumerationConfig enumeration_config_from_env();

bool order_in_tier(std::uint32_t n, int tier);

// Throws TierLimitExceeded or IncompleteSeedSet.
const Catalog& enumerate_groups(std::uint32_t n, const EnumerationConfig& config);
const Catalog& enumerate_groups(std::uint32_t n);

// Regular subgroups of the symmetric group of degree n; n <= 10.
Catalog regular_oracle(std::uint32_t n);

// Dedupes groups up to isomorphism, keeping the first of each class.
std::vector<TablePtr> dedupe_groups(const std::vector<TablePtr>& groups);

// perm(n; ...) recipe for the right regular representation on a
// generating sequence of g.
std::string regular_recipe(const TableGroup& g);

}  // namespace mge
