#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mge/construct.hpp"
#include "mge/enumerator.hpp"
#include "mge/error.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"
#include "oracles.hpp"

using namespace mge;

namespace {

// Numbers of isomorphism classes of groups of order 1..64 from the classical
// classification; independent of the engine.
constexpr std::uint32_t kClassicalCounts[65] = {
    0,  1, 1, 1, 2,  1, 2, 1, 5,  2, 2,  1, 5,  1, 2,  1, 14, 1, 5,  1, 5,  2, 2,
    1,  15, 2, 2, 5, 4, 1, 4, 1, 51, 1, 2,  1, 14, 1, 2, 2, 14, 1, 6, 1, 4, 2, 2, 1,
    52, 2, 5, 1, 5,  1, 15, 2, 13, 2, 2, 1, 13, 1, 2, 4, 267};

bool contains_class(const std::vector<TablePtr>& groups, const char* expr) {
  auto g = construct_table(expr);
  for (const auto& h : groups)
    if (is_isomorphic(g, h)) return true;
  return false;
}

}  // namespace

TEST_CASE("cyclic extensions of small bases") {
  auto c1 = cyclic_extensions(construct_table("C(1)"), 5);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0]->order() == 5);

  auto c7 = cyclic_extensions(construct_table("C(7)"), 2);
  CHECK(c7.size() == 2);
  CHECK(contains_class(c7, "C(14)"));
  CHECK(contains_class(c7, "D(7)"));

  auto c4 = cyclic_extensions(construct_table("C(4)"), 2);
  CHECK(c4.size() == 4);
  for (const char* e : {"C(8)", "C(2)xC(4)", "D(4)", "Q(2)"}) CHECK(contains_class(c4, e));
  CHECK_FALSE(contains_class(c4, "EA(2,3)"));
  for (const auto& g : c4) CHECK(oracle::associative(*g));
}

TEST_CASE("extension groups satisfy the defining relations") {
  auto base = construct_table("C(4)xC(2)");
  auto prob = extension_problem(base, 2);
  REQUIRE_FALSE(prob.pairs.empty());
  for (const auto& [alpha, a] : prob.pairs) {
    auto g = extension_group(base, 2, alpha, a);
    REQUIRE(g->order() == 16);
    CHECK(check_table(*g));
    const std::uint32_t t = base->size();  // index of n t^1 with n = identity
    CHECK(g->m(t, t) == a);
    for (std::uint32_t n = 0; n < base->size(); ++n) CHECK(g->m(g->m(t, n), g->i(t)) == alpha[n]);
  }
}

TEST_CASE("catalog counts match the classical classification through order 64") {
  for (std::uint32_t n = 1; n <= 64; ++n) {
    const auto& cat = enumerate_groups(n);
    CAPTURE(n);
    CHECK(cat.entries.size() == kClassicalCounts[n]);
    for (const auto& e : cat.entries) {
      REQUIRE(e.group->order() == n);
      if (n <= 32) CHECK(check_table(*e.group));
    }
  }
}

TEST_CASE("regular-representation oracle") {
  CHECK(regular_oracle(1).entries.size() == 1);
  auto six = regular_oracle(6);
  REQUIRE(six.entries.size() == 2);
  std::vector<TablePtr> g6;
  for (const auto& e : six.entries) g6.push_back(e.group);
  CHECK(contains_class(g6, "C(6)"));
  CHECK(contains_class(g6, "D(3)"));
  CHECK(regular_oracle(8).entries.size() == 5);
  CHECK_THROWS_AS(regular_oracle(11), OutOfRange);
}

TEST_CASE("oracle and enumeration agree through order 10") {
  for (std::uint32_t n = 1; n <= 10; ++n) {
    auto oracle = regular_oracle(n);
    const auto& cat = enumerate_groups(n);
    CAPTURE(n);
    REQUIRE(oracle.entries.size() == cat.entries.size());
    for (const auto& o : oracle.entries) {
      int matches = 0;
      for (const auto& e : cat.entries) matches += is_isomorphic(o.group, e.group).has_value();
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("catalog entries are pairwise non-isomorphic") {
  for (std::uint32_t n : {8u, 12u, 16u, 18u, 24u}) {
    const auto& cat = enumerate_groups(n);
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
      for (std::size_t j = i + 1; j < cat.entries.size(); ++j)
        CHECK_FALSE(find_isomorphism(cat.entries[i].group, cat.entries[j].group));
  }
}

TEST_CASE("prime-index normal subgroups land in the smaller catalog") {
  for (std::uint32_t n : {12u, 16u, 20u, 24u, 27u, 30u}) {
    for (const auto& e : enumerate_groups(n).entries)
      for (auto p : prime_factors(n))
        for (const auto& k : prime_index_normal_subgroups(e.group, p)) {
          REQUIRE(k.order() * p == n);
          auto base = k.as_group();
          bool found = false;
          for (const auto& b : enumerate_groups(n / p).entries) found = found || is_isomorphic(base, b.group).has_value();
          CHECK(found);
        }
  }
}

TEST_CASE("catalogs are deterministic and match their disk cache") {
  auto cfg = enumeration_config_from_env();
  const auto& a = enumerate_groups(24);
  const auto& b = enumerate_groups(24);
  CHECK(a.to_json().dump() == b.to_json().dump());
  auto d = dedupe_groups([&] {
    std::vector<TablePtr> all;
    for (const auto& e : a.entries) all.push_back(e.group);
    for (const auto& e : a.entries) all.push_back(e.group);
    return all;
  }());
  CHECK(d.size() == a.entries.size());
  if (!cfg.cache_dir.empty()) {
    std::ifstream in(cfg.cache_dir + "/catalog-24-mge-1.0.0.json");
    REQUIRE(in);
    auto disk = nlohmann::json::parse(in);
    CHECK(disk == a.to_json());
  }
}

TEST_CASE("tier limits") {
  CHECK(order_in_tier(64, 1));
  CHECK_FALSE(order_in_tier(72, 1));
  CHECK(order_in_tier(144, 2));
  CHECK_FALSE(order_in_tier(243, 2));
  CHECK(order_in_tier(243, 3));
  CHECK_FALSE(order_in_tier(100, 3));
  EnumerationConfig one;
  one.tier = 1;
  CHECK_THROWS_AS(enumerate_groups(81, one), TierLimitExceeded);
  CHECK_THROWS_AS(enumerate_groups(0, one), OutOfRange);
}

TEST_CASE("regular recipes rebuild the group") {
  for (const auto& e : enumerate_groups(12).entries) {
    auto r = construct_table(regular_recipe(*e.group));
    CHECK(is_isomorphic(r, e.group));
  }
}
