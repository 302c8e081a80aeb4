#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mge::props {

struct PropertyResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Subgroup orders, element orders and exponents divide the group order, on
// every catalog of order 1..max_order.
PropertyResult lagrange(std::uint32_t max_order);
// Class sizes from a direct conjugation scan sum to |G|, divide |G|, and the
// singleton classes are exactly the center.
PropertyResult class_equation(std::uint32_t max_order);
// Relabeled copies keep their fingerprint and are found isomorphic; up to
// pair_limit, groups with different fingerprints are never isomorphic.
PropertyResult fingerprint_soundness(std::uint32_t max_order, std::uint32_t pair_limit);
// For sampled subgroups A, B with B centralizing [A, B] and [A, B] abelian,
// the derived subgroup of B centralizes A.
PropertyResult commutator_centralizer(std::uint32_t max_order, std::uint32_t samples_per_group);
// Every witness in the given reports replays and verifies.
PropertyResult witness_soundness(const std::vector<nlohmann::json>& reports);

std::vector<PropertyResult> catalog_suite();

}  // namespace mge::props
