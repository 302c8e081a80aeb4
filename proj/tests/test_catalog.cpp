#include <doctest.h>

#include <set>

#include "mge/catalog.hpp"
#include "mge/construct.hpp"
#include "mge/error.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"

using namespace mge;

namespace {

// Bounds recomputed by trial division: p^(2k-1) per prime with k the largest
// exponent allowed (p^k <= n) or the exact multiplicity in n.
std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t naive_nbound(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
    if (!prime) continue;
    std::uint64_t k = 0;
    while (power(p, k + 1) <= n) ++k;
    out *= power(p, 2 * k - 1);
  }
  return out;
}

std::uint64_t naive_collection_bound(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    std::uint64_t k = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++k;
    if (k) out *= power(p, 2 * k - 1);
    while (n % p == 0) n /= p;
  }
  return out;
}

}  // namespace

TEST_CASE("bounds") {
  CHECK(pbound(2, 3) == 32);
  CHECK(pbound(3, 3) == 243);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) CHECK(pbound(p, 1) == p);
  CHECK(nbound(2) == 2);
  CHECK(nbound(12) == 332640);
  CHECK(nbound(13) == 4324320);
  CHECK(nbound(15) == 2ull * 2 * 2 * 2 * 2 * 27 * 5 * 7 * 11 * 13);
  CHECK(collection_bound(8) == 32);
  CHECK(collection_bound(12) == 24);
  for (std::uint64_t p : {2u, 3u, 13u}) CHECK(collection_bound(p) == p);
  for (std::uint64_t n = 1; n <= 40; ++n) {
    CAPTURE(n);
    CHECK(nbound(n) == naive_nbound(n));
    CHECK(collection_bound(n) == naive_collection_bound(n));
    // nbound(n) is a multiple of every collection bound for orders up to n.
    for (std::uint64_t m = 1; m <= n; ++m) CHECK(nbound(n) % collection_bound(m) == 0);
  }
}

TEST_CASE("group lists for orders 1 to 15") {
  CHECK(groups_of_order(8).size() == 5);
  CHECK(table1_labels(11) == std::vector<std::string>{"C11"});
  auto four = table1_labels(4);
  CHECK(std::set<std::string>(four.begin(), four.end()) == std::set<std::string>{"C4", "C2xC2"});
  CHECK_THROWS_AS(table1_labels(16), OutOfRange);
  CHECK_THROWS_AS(table1_labels(0), OutOfRange);
  // Within each order the recipes are pairwise non-isomorphic.
  for (std::uint32_t n = 1; n <= 15; ++n) {
    auto exprs = groups_of_order(n);
    std::vector<TablePtr> gs;
    for (const auto& e : exprs) {
      gs.push_back(construct_table(e));
      CHECK(gs.back()->order() == n);
    }
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(is_isomorphic(gs[i], gs[j]));
  }
}

TEST_CASE("named constructions realize with their recorded orders") {
  std::set<std::string> labels;
  for (const auto& nc : registry()) {
    CAPTURE(nc.label);
    CHECK(labels.insert(nc.label).second);
    CHECK(predicted_order(named_group(nc.label)) == nc.order);
    if (nc.order <= 20000000) CHECK(construct(named_group(nc.label))->order() == nc.order);
    CHECK(named_order(nc.label) == nc.order);
  }
  CHECK(named_order("H2") == 32);
  CHECK(named_order("BIG12_SOL") == 665280);
  CHECK(named_order("EX192") == 192);
  CHECK(192 % 144 != 0);
  CHECK(named_order("C5xC7xD3xH1") == 3360);
  auto h3 = construct_table("named(H3)");
  CHECK(h3->order() == 27);
  CHECK(exponent(*h3) == 9);
  CHECK(named_order("W(3)") == 243);
  CHECK(named_order("Gp6(3)") == 729);
  CHECK_THROWS_AS(named_group("NOPE"), UnknownLabel);
  CHECK_THROWS_AS(named_group("BIG12_SOL:theta9"), UnknownLabel);
}

TEST_CASE("family parameters") {
  for (const char* label : {"BIG12_SOL", "BIG12_NONSOL", "BIG15_SOL", "BIG15_NONSOL"}) {
    const auto& nc = named_construction(label);
    CHECK(nc.parameters.size() == 4);
    for (const auto& p : nc.parameters) {
      auto full = p.empty() ? std::string(label) : std::string(label) + ":" + p;
      CHECK(construct(named_group(full))->order() == nc.order);
    }
  }
}

TEST_CASE("expected tables") {
  for (const auto& row : table4()) {
    CAPTURE(row.n);
    if (row.n <= 11)
      CHECK(row.order == nbound(row.n));
    else
      CHECK(row.order == 2 * nbound(row.n));
  }
  std::set<std::uint32_t> rows5;
  for (const auto& row : table5()) {
    CAPTURE(row.n);
    rows5.insert(row.n);
    CHECK(row.order == nbound(row.n));
    for (const auto& l : row.labels) CHECK(named_order(l) == row.order);
  }
  CHECK(rows5.count(8));
  for (const auto& row : table2()) {
    CAPTURE(row.n);
    CHECK(row.order % collection_bound(row.n) == 0);
    for (const auto& l : row.labels) CHECK(named_order(l) == row.order);
  }
  for (const auto& row : large_constructions()) {
    CHECK(row.n >= 12);
    for (const auto& l : row.labels) CHECK(named_order(l) == row.order);
  }
}

TEST_CASE("perfect seeds") {
  for (const auto& s : perfect_seeds()) {
    CAPTURE(s.label);
    auto g = construct_table(named_group(s.label));
    CHECK(g->order() == s.order);
    CHECK(derived_subgroup(g).order() == g->order());
    CHECK(center(g).order() == s.center_order);
  }
}
