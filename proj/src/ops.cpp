#include "mge/ops.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "mge/construct.hpp"
#include "mge/error.hpp"

namespace mge {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(static_cast<std::uint32_t>(d));
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

Subgroup make_subgroup(GroupPtr ambient, std::vector<Elem> elements, std::vector<Elem> generators) {
  Subgroup s;
  s.ambient = std::move(ambient);
  s.elements = std::move(elements);
  s.generators = std::move(generators);
  s.sorted = s.elements;
  std::sort(s.sorted.begin(), s.sorted.end());
  return s;
}

bool Subgroup::contains(Elem x) const { return std::binary_search(sorted.begin(), sorted.end(), x); }

TablePtr Subgroup::as_group() const {
  const auto n = static_cast<std::uint32_t>(elements.size());
  if (n > engine_config().table_limit) throw OrderLimitExceeded("subgroup of order " + std::to_string(n));
  std::unordered_map<Elem, std::uint32_t> index;
  index.reserve(n * 2);
  for (std::uint32_t k = 0; k < n; ++k) index.emplace(elements[k], k);
  const Group& g = *ambient;
  auto t = TableGroup::from_mul(n, [&](std::uint32_t a, std::uint32_t b) { return index.at(g.mul(elements[a], elements[b])); });
  std::vector<std::pair<std::string, Elem>> bindings;
  for (std::size_t k = 0; k < generators.size(); ++k)
    bindings.emplace_back("s" + std::to_string(k + 1), index.at(generators[k]));
  t->set_bindings(std::move(bindings));
  return t;
}

std::uint64_t element_order(const Group& g, Elem x) {
  if (const auto* t = g.as_table()) return t->element_order(static_cast<std::uint32_t>(x));
  std::uint64_t k = 1;
  const Elem e = g.identity();
  for (Elem y = x; y != e; y = g.mul(y, x)) ++k;
  return k;
}

Subgroup generated_subgroup(GroupPtr g, const std::vector<Elem>& gens, std::uint64_t limit) {
  if (limit == 0) limit = engine_config().subgroup_limit;
  std::vector<Elem> elems{g->identity()};
  if (const auto* t = g->as_table()) {
    std::vector<char> seen(t->size(), 0);
    seen[0] = 1;
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (auto s : gens) {
        auto y = t->m(static_cast<std::uint32_t>(elems[k]), static_cast<std::uint32_t>(s));
        if (seen[y]) continue;
        seen[y] = 1;
        elems.push_back(y);
      }
  } else {
    std::unordered_set<Elem> seen{elems[0]};
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (auto s : gens) {
        Elem y = g->mul(elems[k], s);
        if (!seen.insert(y).second) continue;
        if (elems.size() >= limit)
          throw SubgroupLimitExceeded("closure passed " + std::to_string(limit) + " elements");
        elems.push_back(y);
      }
  }
  if (elems.size() > limit) throw SubgroupLimitExceeded("closure passed " + std::to_string(limit) + " elements");
  return make_subgroup(std::move(g), std::move(elems), gens);
}

bool is_abelian(const TableGroup& g) {
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = a + 1; b < g.size(); ++b)
      if (g.m(a, b) != g.m(b, a)) return false;
  return true;
}

Subgroup center(const TablePtr& g) {
  const auto& prof = g->profile();
  std::vector<Elem> z;
  for (std::uint32_t x = 0; x < g->size(); ++x)
    if (prof.centralizer[x] == g->size()) z.push_back(x);
  return make_subgroup(g, z, z);
}

Subgroup centralizer(const TablePtr& g, const std::vector<Elem>& of) {
  std::vector<Elem> c;
  for (std::uint32_t x = 0; x < g->size(); ++x) {
    bool ok = true;
    for (auto y : of) ok = ok && g->m(x, static_cast<std::uint32_t>(y)) == g->m(static_cast<std::uint32_t>(y), x);
    if (ok) c.push_back(x);
  }
  return make_subgroup(g, c, c);
}

Subgroup derived_subgroup(const TablePtr& g) {
  std::vector<char> is_comm(g->size(), 0);
  std::vector<Elem> comms;
  for (std::uint32_t a = 0; a < g->size(); ++a)
    for (std::uint32_t b = 0; b < g->size(); ++b) {
      auto c = g->m(g->m(g->i(a), g->i(b)), g->m(a, b));
      if (!is_comm[c]) {
        is_comm[c] = 1;
        comms.push_back(c);
      }
    }
  return generated_subgroup(g, comms);
}

std::uint64_t exponent(const Group& g) {
  if (const auto* t = g.as_table()) {
    std::uint64_t e = 1;
    for (std::uint32_t x = 0; x < t->size(); ++x) e = std::lcm(e, t->element_order(x));
    return e;
  }
  if (const auto* tw = dynamic_cast<const TwistedGroup*>(&g)) return tw->exponent();
  throw Error("Unsupported", "exponent of this representation");
}

Subgroup sylow_subgroup(const TablePtr& g, std::uint32_t p) {
  std::uint64_t target = 1;
  for (std::uint64_t n = g->size(); n % p == 0; n /= p) target *= p;
  auto is_p_power = [p](std::uint64_t k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };
  Subgroup s = generated_subgroup(g, {});
  // A p-subgroup that no p-element extends is maximal, hence Sylow.
  while (s.order() < target) {
    bool grown = false;
    for (std::uint32_t x = 0; x < g->size() && !grown; ++x) {
      if (s.contains(x) || !is_p_power(g->element_order(x))) continue;
      auto gens = s.generators;
      gens.push_back(x);
      auto t = generated_subgroup(g, gens);
      if (is_p_power(t.order())) {
        s = std::move(t);
        grown = true;
      }
    }
    if (!grown) break;
  }
  return s;
}

bool is_normal(const TableGroup& g, const Subgroup& n) {
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (auto y : n.generators)
      if (!n.contains(g.m(g.m(x, static_cast<std::uint32_t>(y)), g.i(x)))) return false;
  return true;
}

QuotientResult quotient(const TablePtr& g, const std::vector<Elem>& normal_gens) {
  auto n = generated_subgroup(g, normal_gens);
  if (!is_normal(*g, n)) throw NotNormal("subgroup of order " + std::to_string(n.order()) + " is not normal");
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> proj(g->size(), kUnset);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g->size(); ++x) {
    if (proj[x] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto y : n.elements) proj[g->m(x, static_cast<std::uint32_t>(y))] = id;
  }
  auto q = TableGroup::from_mul(static_cast<std::uint32_t>(reps.size()),
                                [&](std::uint32_t a, std::uint32_t b) { return proj[g->m(reps[a], reps[b])]; });
  std::vector<std::pair<std::string, Elem>> bindings;
  for (const auto& [name, e] : g->bindings()) bindings.emplace_back(name, proj[e]);
  q->set_bindings(std::move(bindings));
  q->add_link({g, proj});
  return {q, proj};
}

bool check_table(const TableGroup& g) {
  const auto n = g.size();
  const auto& t = g.raw_table();
  if (t.size() != static_cast<std::size_t>(n) * n) return false;
  for (auto v : t)
    if (v >= n) return false;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (g.m(0, x) != x || g.m(x, 0) != x) return false;
    if (g.m(x, g.i(x)) != 0 || g.m(g.i(x), x) != 0) return false;
  }
  // Rows and columns are permutations.
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (std::uint32_t b = 0; b < n; ++b) {
      if (row[g.m(a, b)]++ || col[g.m(b, a)]++) return false;
    }
  }
  if (n <= 512) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) {
        auto ab = g.m(a, b);
        for (std::uint32_t c = 0; c < n; ++c)
          if (g.m(ab, c) != g.m(a, g.m(b, c))) return false;
      }
    return true;
  }
  // Light's test: associativity on a generating set implies it everywhere.
  std::vector<std::uint32_t> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<std::uint32_t> elems{0};
  for (std::uint32_t x = 0; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (auto s : gens) {
        auto y = g.m(elems[k], s);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
  }
  for (auto s : gens)
    for (std::uint32_t a = 0; a < n; ++a) {
      auto as = g.m(a, s);
      for (std::uint32_t b = 0; b < n; ++b)
        if (g.m(as, b) != g.m(a, g.m(s, b))) return false;
    }
  return true;
}

std::vector<std::uint32_t> conjugacy_class_sizes(const TableGroup& g) {
  const auto n = g.size();
  std::vector<char> done(n, 0);
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::uint32_t size = 0;
    for (std::uint32_t y = 0; y < n; ++y) {
      auto c = g.m(g.m(y, x), g.i(y));
      if (!done[c]) {
        done[c] = 1;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<Subgroup> prime_index_normal_subgroups(const TablePtr& g, std::uint32_t p) {
  if (g->size() % p != 0) return {};
  // M = G'G^p; kernels of maps onto C_p are the hyperplanes of G/M.
  std::vector<Elem> gens;
  for (auto c : derived_subgroup(g).elements) gens.push_back(c);
  for (std::uint32_t x = 0; x < g->size(); ++x) gens.push_back(g->power(x, p));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  auto q = quotient(g, gens);
  const auto& Q = *q.group;
  // Coordinates on a greedy basis of the elementary abelian quotient.
  std::vector<std::uint32_t> basis;
  std::vector<std::vector<std::uint32_t>> coords(Q.size());
  std::vector<std::uint32_t> span{0};
  for (std::uint32_t x = 0; x < Q.size(); ++x) {
    if (std::find(span.begin(), span.end(), x) != span.end()) continue;
    basis.push_back(x);
    std::vector<std::uint32_t> next;
    for (auto s : span) {
      const auto base = coords[s];
      std::uint32_t y = s;
      for (std::uint32_t k = 0; k < p; ++k) {
        coords[y] = base;
        coords[y].push_back(k);
        next.push_back(y);
        y = Q.m(y, x);
      }
    }
    span = std::move(next);
  }
  for (auto& c : coords) c.resize(basis.size(), 0);
  const std::size_t d = basis.size();
  std::vector<Subgroup> result;
  std::vector<std::uint32_t> f(d, 0);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= p;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t k = 0; k < d; ++k) {
      f[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    // Normalise: first nonzero coefficient equal to one.
    std::size_t lead = 0;
    while (f[lead] == 0) ++lead;
    if (f[lead] != 1) continue;
    std::vector<Elem> elems;
    for (std::uint32_t x = 0; x < g->size(); ++x) {
      const auto& v = coords[q.projection[x]];
      std::uint64_t dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += static_cast<std::uint64_t>(f[k]) * v[k];
      if (dot % p == 0) elems.push_back(x);
    }
    result.push_back(make_subgroup(g, elems, elems));
  }
  return result;
}

std::vector<std::uint32_t> abelian_invariants(const TableGroup& g) {
  std::vector<std::uint32_t> out;
  for (auto p : prime_factors(g.size())) {
    // s[k] = log_p #{x : x^(p^k) = 1}
    std::vector<std::uint32_t> s{0};
    std::uint64_t pk = 1;
    for (;;) {
      pk *= p;
      std::uint64_t count = 0;
      for (std::uint32_t x = 0; x < g.size(); ++x) count += g.power(x, static_cast<long>(pk)) == 0;
      std::uint32_t logc = 0;
      while (count > 1) {
        count /= p;
        ++logc;
      }
      if (logc == s.back()) break;
      s.push_back(logc);
    }
    // s[k] - s[k-1] invariants are at least p^k.
    std::uint64_t q = 1;
    for (std::size_t k = 1; k < s.size(); ++k) {
      q *= p;
      std::uint32_t at_least = s[k] - s[k - 1];
      std::uint32_t at_least_next = k + 1 < s.size() ? s[k + 1] - s[k] : 0;
      for (std::uint32_t r = 0; r < at_least - at_least_next; ++r) out.push_back(static_cast<std::uint32_t>(q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mge
