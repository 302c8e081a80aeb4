#include <doctest.h>

#include <functional>
#include <set>

#include "mge/construct.hpp"
#include "mge/error.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"
#include "oracles.hpp"

using namespace mge;

namespace {

// Automorphism count by brute force: bijections fixed by images of a
// generating pair, checked on the whole table.
std::uint64_t brute_aut_count(const TablePtr& g) {
  auto gens = generating_sequence(*g);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> img(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      // Extend by closure: words in gens map to the same words in images.
      std::vector<std::int64_t> map(g->size(), -1);
      map[0] = 0;
      std::vector<std::uint32_t> queue{0};
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (std::size_t i = 0; i < gens.size(); ++i) {
          auto y = g->m(queue[q], gens[i]);
          auto fy = g->m(static_cast<std::uint32_t>(map[queue[q]]), img[i]);
          if (map[y] < 0) {
            map[y] = fy;
            queue.push_back(y);
          } else if (map[y] != fy) {
            return;
          }
        }
      std::set<std::int64_t> values(map.begin(), map.end());
      if (values.size() != g->size()) return;
      for (std::uint32_t a = 0; a < g->size(); ++a)
        for (std::uint32_t b = 0; b < g->size(); ++b)
          if (map[g->m(a, b)] != g->m(static_cast<std::uint32_t>(map[a]), static_cast<std::uint32_t>(map[b]))) return;
      ++count;
      return;
    }
    for (std::uint32_t x = 0; x < g->size(); ++x) {
      if (g->element_order(x) != g->element_order(gens[k])) continue;
      img[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("fingerprints separate small classes") {
  auto c4 = fingerprint(*construct_table("C(4)"));
  auto v4 = fingerprint(*construct_table("C(2)xC(2)"));
  CHECK_FALSE(c4 == v4);
  CHECK(c4.element_orders != v4.element_orders);
  auto c9 = fingerprint(*construct_table("C(9)"));
  auto c33 = fingerprint(*construct_table("C(3)xC(3)"));
  CHECK(c9.exponent == 9);
  CHECK(c33.exponent == 3);
  auto a = construct_table("named(C2xH1)");
  auto b = construct_table("named(H2)");
  CHECK_FALSE(fingerprint(*a) == fingerprint(*b));
  CHECK(oracle::order_counts(*a) != oracle::order_counts(*b));
  CHECK(fingerprint(*a).canonical() == fingerprint(*construct_table("named(C2xH1)")).canonical());
}

TEST_CASE("isomorphism search") {
  auto s = construct_table("named(S3xS4)");
  auto self = is_isomorphic(s, s);
  REQUIRE(self);
  CHECK(self->verify());
  CHECK_FALSE(is_isomorphic(construct_table("named(C2xH1)"), construct_table("named(H2)")));
  CHECK_FALSE(find_isomorphism(construct_table("named(C2xH1)"), construct_table("named(H2)")));
  auto other = construct_table("S(3)xS(4)");
  auto iso = is_isomorphic(other, s);
  REQUIRE(iso);
  CHECK(iso->kind == MorphismKind::Isomorphism);
  CHECK(iso->verify());
  CHECK(is_isomorphic(construct_table("named(Q2)"), construct_table("Q(2)")));
  CHECK(is_isomorphic(construct_table("D(3)"), construct_table("S(3)")));
}

TEST_CASE("embedding search") {
  auto s = construct_table("named(S3xS4)");
  auto q3 = construct_table("Q(3)");
  auto e = find_embedding(q3, s);
  REQUIRE(e);
  CHECK(e->kind == MorphismKind::Monomorphism);
  CHECK(e->verify());
  CHECK_FALSE(find_embedding(construct_table("Q(2)"), construct_table("D(8)")));
  CHECK_FALSE(find_embedding(construct_table("C(8)"), construct_table("C(4)xC(4)xC(2)")));
  CHECK_FALSE(find_embedding(construct_table("C(8)"), construct_table("named(S3xS4)")));
  SearchOptions tiny;
  tiny.node_budget = 1;
  CHECK_THROWS_AS(find_embedding(construct_table("C(2)xC(2)xC(2)"), construct_table("named(EX192)"), {}, tiny),
                  SearchBudgetExceeded);
}

TEST_CASE("embedding into a structured ambient with a support") {
  auto big = construct("named(BIG12_SOL)");
  auto d5 = construct_table("D(5)");
  auto e = find_embedding(d5, big);
  REQUIRE(e);
  CHECK(e->verify());
}

TEST_CASE("composition, inverse and replay") {
  auto q2 = construct_table("Q(2)");
  auto h1 = construct_table("named(H1)");
  auto s = construct_table("C(2)xnamed(H1)");
  auto first = find_embedding(q2, h1);
  REQUIRE(first);
  auto second = find_embedding(h1, s);
  REQUIRE(second);
  auto both = compose(*first, *second);
  CHECK(both.verify());
  CHECK(both.source == q2);
  for (std::uint32_t x = 0; x < q2->size(); ++x) CHECK(both.map[x] == second->map[first->map[x]]);

  auto iso = is_isomorphic(construct_table("D(3)"), construct_table("S(3)"));
  REQUIRE(iso);
  auto back = inverse(*iso);
  CHECK(back.verify());
  auto round = compose(*iso, back);
  for (std::uint32_t x = 0; x < 6; ++x) CHECK(round.map[x] == x);

  auto j = first->to_json();
  std::vector<std::string> src, img;
  for (const auto& w : j.at("generators")) src.push_back(w.get<std::string>());
  for (const auto& w : j.at("images")) img.push_back(w.get<std::string>());
  auto again = replay(q2, h1, src, img, MorphismKind::Monomorphism);
  REQUIRE(again);
  CHECK(again->map == first->map);
  std::vector<std::string> bad(img.size(), "1");
  CHECK_FALSE(replay(q2, h1, src, bad, MorphismKind::Monomorphism));
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(construct_table("C(1)")) == 1);
  auto c8 = construct_table("C(8)");
  CHECK(automorphism_count(c8) == 4);
  // Aut(C8) is elementary abelian: every automorphism is an involution or trivial.
  for_each_automorphism(c8, [&](const std::vector<std::uint32_t>& m) {
    for (std::uint32_t x = 0; x < 8; ++x) CHECK(m[m[x]] == x);
    return true;
  });
  CHECK(automorphism_count(construct_table("D(4)")) == 8);
  auto ea = construct_table("EA(2,3)");
  CHECK(automorphism_count(ea) == 168);
  CHECK(for_each_automorphism_generic(ea, [](const std::vector<std::uint32_t>&) { return true; }) == 168);
  for (const char* e : {"D(4)", "Q(2)", "C(2)xC(4)", "A(4)", "D(6)", "C(3)xC(3)"}) {
    auto g = construct_table(e);
    auto n = automorphism_count(g);
    CHECK(n == brute_aut_count(g));
    CHECK(n == for_each_automorphism_generic(g, [](const std::vector<std::uint32_t>&) { return true; }));
  }
  CHECK_THROWS_AS(automorphism_count(ea, 10), AutBudgetExceeded);
}

TEST_CASE("generating sequences generate") {
  for (const char* e : {"named(S3xS4)", "named(H2)", "EA(2,4)", "named(W(3))"}) {
    auto g = construct_table(e);
    auto gens = generating_sequence(*g);
    CHECK(oracle::closure(*g, gens).size() == g->size());
  }
}
