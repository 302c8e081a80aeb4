#include <doctest.h>

#include <algorithm>

#include "mge/catalog.hpp"
#include "mge/construct.hpp"
#include "mge/error.hpp"
#include "mge/expr.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"
#include "oracles.hpp"

using namespace mge;

namespace {

std::vector<std::uint32_t> sorted_elems(const Subgroup& s) {
  std::vector<std::uint32_t> v(s.elements.begin(), s.elements.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::uint32_t at(const TablePtr& g, const char* word) { return static_cast<std::uint32_t>(eval_word(*g, word)); }

}  // namespace

TEST_CASE("construct: basic orders and exponents") {
  auto c8 = construct_table("C(8)");
  CHECK(c8->order() == 8);
  CHECK(exponent(*c8) == 8);
  CHECK(construct_table("EA(2,3)")->order() == 8);
  CHECK(exponent(*construct_table("EA(2,3)")) == 2);
  CHECK(exponent(*construct_table("C(4)xC(4)")) == 4);
  CHECK(construct_table("D(5)")->order() == 10);
  CHECK(construct_table("Q(3)")->order() == 12);
  CHECK(construct_table("S(4)")->order() == 24);
  CHECK(construct_table("A(5)")->order() == 60);
  CHECK(construct_table("perm(4; \"(1234)\", \"(12)\")")->order() == 24);
  CHECK(construct_table("C(2)xnamed(H1)")->order() == 32);
}

TEST_CASE("construct: quasi-dihedral semidirect product and its quaternion subgroup") {
  auto g = construct_table("C(2)[x1] x sd(C(8)[y], C(2)[x2], x2: y=y^3)");
  REQUIRE(g->order() == 32);
  auto q = generated_subgroup(g, {eval_word(*g, "y^2"), eval_word(*g, "x2*y")});
  CHECK(q.order() == 8);
  auto qt = q.as_group();
  CHECK_FALSE(oracle::is_abelian(*qt));
  CHECK(element_order(*g, eval_word(*g, "y^2")) == 4);
  CHECK(element_order(*g, eval_word(*g, "x2*y")) == 4);
  CHECK(is_isomorphic(qt, construct_table("Q(2)")).has_value());
}

TEST_CASE("element orders") {
  auto k1 = construct_table("named(K1)");
  CHECK(element_order(*k1, k1->identity()) == 1);
  CHECK(element_order(*k1, eval_word(*k1, "a1")) == 4);
  auto big = construct("named(BIG_AMBIENT)");
  CHECK(element_order(*big, eval_word(*big, "a1*theta1*theta2")) == 8);
  // Engine element orders agree with repeated multiplication on every catalog group.
  for (const char* e : {"named(S3xS4)", "named(H2)", "named(EX192)"}) {
    auto g = construct_table(e);
    for (std::uint32_t x = 0; x < g->size(); ++x) REQUIRE(g->element_order(x) == oracle::order_of(*g, x));
  }
}

TEST_CASE("generated subgroups") {
  auto s = construct_table("named(S3xS4)");
  CHECK(generated_subgroup(s, {s->identity()}).order() == 1);
  auto c12 = generated_subgroup(s, {eval_word(*s, "a*(1234)")});
  CHECK(c12.order() == 12);
  CHECK(is_isomorphic(c12.as_group(), construct_table("C(12)")).has_value());
  auto h = construct_table("named(C2xH1)");
  auto sub = generated_subgroup(h, {eval_word(*h, "y^2"), eval_word(*h, "x2*y")});
  CHECK(sub.order() == 8);
  CHECK(sorted_elems(sub) == oracle::closure(*h, {at(h, "y^2"), at(h, "x2*y")}));
  CHECK_THROWS_AS(generated_subgroup(s, {eval_word(*s, "a")}, 2), SubgroupLimitExceeded);
}

TEST_CASE("center agrees with a direct scan") {
  auto c = construct_table("C(4)xC(3)");
  CHECK(center(c).order() == 12);
  CHECK(center(construct_table("named(Q2)")).order() == 2);
  auto s = construct_table("named(S3xS4)");
  CHECK(center(s).order() == 1);
  for (const char* e : {"named(H1)", "named(H2)", "named(C2xH1)", "D(6)", "named(EX192)"}) {
    auto g = construct_table(e);
    CHECK(sorted_elems(center(g)) == oracle::center(*g));
  }
}

TEST_CASE("derived subgroup agrees with brute-force commutators") {
  CHECK(derived_subgroup(construct_table("C(6)xC(2)")).order() == 1);
  auto a4 = construct_table("A(4)");
  auto d = derived_subgroup(a4);
  CHECK(d.order() == 4);
  CHECK(exponent(*d.as_group()) == 2);
  auto h1 = construct_table("named(H1)");
  auto dh = derived_subgroup(h1);
  CHECK(dh.order() == 4);
  CHECK(sorted_elems(dh) == oracle::derived(*h1));
  CHECK(sorted_elems(dh) == oracle::closure(*h1, {at(h1, "y^2")}));
}

TEST_CASE("exponent of the order-243 central product") {
  auto w = construct_table("named(W(3))");
  REQUIRE(w->order() == 243);
  std::uint32_t max_order = 0;
  for (std::uint32_t x = 0; x < w->size(); ++x) max_order = std::max(max_order, oracle::order_of(*w, x));
  CHECK(max_order == 27);
  CHECK(exponent(*w) == 27);
}

TEST_CASE("Sylow subgroups") {
  auto c7 = construct_table("C(7)");
  CHECK(sylow_subgroup(c7, 7).order() == 7);
  auto s = construct_table("named(S3xS4)");
  auto p3 = sylow_subgroup(s, 3);
  CHECK(p3.order() == 9);
  CHECK(is_isomorphic(p3.as_group(), construct_table("C(3)xC(3)")).has_value());
  auto s4 = construct_table("S(4)");
  auto p2 = sylow_subgroup(s4, 2);
  CHECK(p2.order() == 8);
  CHECK(is_isomorphic(p2.as_group(), construct_table("D(4)")).has_value());
  // Oracle: two elements of 2-power order in S4 generate a subgroup of order 8.
  bool found = false;
  for (std::uint32_t a = 0; a < 24 && !found; ++a)
    for (std::uint32_t b = 0; b < 24 && !found; ++b)
      if ((oracle::order_of(*s4, a) & (oracle::order_of(*s4, a) - 1)) == 0 &&
          (oracle::order_of(*s4, b) & (oracle::order_of(*s4, b) - 1)) == 0) {
        auto cl = oracle::closure(*s4, {a, b});
        found = cl.size() == 8;
      }
  CHECK(found);
}

TEST_CASE("quotients") {
  auto d4 = construct_table("D(4)");
  CHECK(is_isomorphic(quotient(d4, {}).group, d4).has_value());
  auto h = construct_table("named(C2xH1)");
  auto q = quotient(h, {eval_word(*h, "x1")});
  CHECK(q.group->order() == 16);
  CHECK(is_isomorphic(q.group, construct_table("named(H1)")).has_value());
  auto z = center(d4);
  CHECK(is_isomorphic(quotient(d4, z.elements).group, construct_table("C(2)xC(2)")).has_value());
  auto s3 = construct_table("S(3)");
  CHECK_THROWS_AS(quotient(s3, {eval_word(*s3, "(12)")}), NotNormal);
  // Identify the order-3 subgroup of C27 with the center of the order-27 group.
  auto w = construct_table("quo(C(27)[x] x named(B(3))[a,z,b], x^-9*z)");
  CHECK(w->order() == 243);
  CHECK(is_isomorphic(w, construct_table("named(W(3))")).has_value());
}

TEST_CASE("check_table") {
  for (const char* e : {"named(H2)", "D(7)", "named(S3xS4)", "Q(4)"}) {
    auto g = construct_table(e);
    CHECK(check_table(*g));
  }
  auto h2 = construct_table("named(H2)");
  CHECK(oracle::associative(*h2));
  auto raw = TableGroup::from_raw(h2->size(), h2->raw_table());
  CHECK(check_table(*raw));
  raw->corrupt_entry(3, 5, raw->m(3, 6));
  CHECK_FALSE(check_table(*raw));
}

TEST_CASE("words and parsing") {
  CHECK_THROWS_AS(parse_group_expr("C("), ParseError);
  CHECK_THROWS_AS(parse_group_expr("Z(4)"), ParseError);
  CHECK_THROWS_AS(construct("named(NOPE)"), UnknownLabel);
  auto d = construct_table("D(4)");
  CHECK_THROWS_AS(eval_word(*d, "q"), UnknownGenerator);
  CHECK(eval_word(*d, "1") == d->identity());
  CHECK(eval_word(*d, "(a*b)^-1") == d->inv(d->mul(eval_word(*d, "a"), eval_word(*d, "b"))));
  // A generator literally named e is not the identity.
  auto c7 = construct_table("C(7)[e]");
  CHECK(eval_word(*c7, "e") != c7->identity());
  CHECK(element_order(*c7, eval_word(*c7, "e")) == 7);
}

TEST_CASE("describe round-trips through eval_word") {
  for (const char* e : {"named(S3xS4)", "named(C2xH1)", "named(K2_ext)"}) {
    auto g = construct_table(e);
    for (std::uint32_t x = 0; x < g->size(); ++x) REQUIRE(eval_word(*g, g->describe(x)) == x);
  }
  auto big = construct("named(BIG12_SOL)");
  for (const char* w : {"a1*theta1*theta2", "(123)", "b1*theta2*theta3"}) {
    Elem x;
    try {
      x = eval_word(*big, w);
    } catch (const UnknownGenerator&) {
      continue;
    }
    if (!big->contains(x)) continue;
    CHECK(eval_word(*big, big->describe(x)) == x);
  }
}

TEST_CASE("structured direct products above the dense limit") {
  auto g = construct("named(C7xC9xC11xD15xH1)");
  CHECK(g->order() == 332640);
  CHECK(g->as_table() == nullptr);
  CHECK(predicted_order(named_group("BIG15_NONSOL")) == 8648640);
}
