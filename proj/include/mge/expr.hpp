#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mge {

// One factor of a generator word: a bound symbol, a permutation in cycle
// notation, or a parenthesised subword, raised to an integer power.
struct WordFactor {
  enum class Kind { Symbol, Cycles, Sub } kind = Kind::Symbol;
  std::string text;                // symbol name or cycle string
  std::vector<WordFactor> sub;     // Kind::Sub
  long exponent = 1;
};

struct Word {
  std::vector<WordFactor> factors;  // empty word is the identity
  std::string source;
};

// Words: juxtaposed or '*'-separated factors with optional ^k, for example
// "a1*theta1*theta2", "y^2", "(14)(32)(12)theta3", "(a*b)^-1". "1" alone
// denotes the identity; "e" is an ordinary generator name.
Word parse_word(std::string_view text);

enum class ExprKind {
  Cyclic,
  ElemAbelian,
  Dihedral,
  Dicyclic,
  Symmetric,
  Alternating,
  DirectProduct,
  SemidirectProduct,
  CentralProduct,
  Quotient,
  PermGroup,
  Named,
  Twisted,
};

// "actor_gen:base_gen=image". actor_gen may be empty when the actor has a
// single bound generator.
struct ActionClause {
  std::string actor_gen;
  std::string base_gen;
  std::string image;
};

struct GroupExpr {
  ExprKind kind = ExprKind::Cyclic;
  std::vector<long> ints;             // n; (p, k); degree
  std::vector<GroupExpr> children;    // factors; (base, actor); (a, b); quotient source; twist components
  std::vector<ActionClause> actions;  // semidirect product
  std::vector<std::string> words;     // quotient gens; perm gens; (u, v); twist span words
  std::string label;                  // Named
  std::vector<std::string> rename;    // optional "[n1,n2,...]" suffix

  std::string to_string() const;
};

// Grammar:
//   expr    := atom ('x' atom)*
//   atom    := C(n) | EA(p,k) | D(n) | Q(n) | S(n) | A(n)
//            | sd(expr, expr, clause, ...) | cp(expr, expr, u=v)
//            | quo(expr, word, ...) | perm(deg; "cycles", ...)
//            | named(LABEL) | tw(expr, ...; span=word, ...) | '(' expr ')'
//   atom may carry a rename suffix "[g1,g2,...]" for its bound generators.
// tw components of the form sd(K, C(2)[t], ...) contribute an involution t.
GroupExpr parse_group_expr(std::string_view text);

GroupExpr make_cyclic(long n);
GroupExpr make_named(std::string label);
GroupExpr make_direct(std::vector<GroupExpr> factors);

}  // namespace mge
