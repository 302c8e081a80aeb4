#include "mge/construct.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

#include "mge/catalog.hpp"
#include "mge/error.hpp"
#include "mge/ops.hpp"

namespace mge {

namespace {

EngineConfig& config_storage() {
  static EngineConfig config;
  return config;
}

using Bindings = std::vector<std::pair<std::string, Elem>>;

void add_binding(Bindings& b, std::string name, Elem e, std::size_t factor) {
  auto taken = [&](const std::string& n) {
    return std::any_of(b.begin(), b.end(), [&](const auto& p) { return p.first == n; });
  };
  if (taken(name)) {
    std::string alt = name + "_" + std::to_string(factor + 1);
    for (int k = 2; taken(alt); ++k) alt = name + "_" + std::to_string(factor + 1) + "_" + std::to_string(k);
    name = alt;
  }
  b.emplace_back(std::move(name), e);
}

std::string cycle_name(const std::vector<std::size_t>& points) {
  bool commas = std::any_of(points.begin(), points.end(), [](std::size_t p) { return p > 9; });
  std::string s = "(";
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k && commas) s += ",";
    s += std::to_string(points[k]);
  }
  return s + ")";
}

std::shared_ptr<TableGroup> perm_group(std::size_t degree, const std::vector<std::string>& gens) {
  std::vector<Perm> perms;
  for (const auto& g : gens) perms.push_back(parse_cycles(g, degree));
  auto t = TableGroup::from_perms(degree, perms, engine_config().table_limit);
  Bindings b;
  for (std::size_t k = 0; k < gens.size(); ++k) add_binding(b, gens[k], *t->perm_index(perms[k]), 0);
  t->set_bindings(std::move(b));
  return t;
}

// Extends generator images to a homomorphism by walking the Cayley graph of
// src. Returns an empty vector on an inconsistent edge or when the
// generators do not reach all of src.
std::vector<std::uint32_t> extend_hom(const TableGroup& src, const std::vector<std::uint32_t>& gens,
                                      const std::vector<std::uint32_t>& images, const TableGroup& dst) {
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> map(src.size(), kUnset);
  map[0] = 0;
  std::deque<std::uint32_t> queue{0};
  std::size_t reached = 1;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto y = src.m(x, gens[k]);
      auto img = dst.m(map[x], images[k]);
      if (map[y] == kUnset) {
        map[y] = img;
        ++reached;
        queue.push_back(y);
      } else if (map[y] != img) {
        return {};
      }
    }
  }
  if (reached != src.size()) return {};
  return map;
}

std::vector<std::uint32_t> gen_indices(const Group& g) {
  std::vector<std::uint32_t> out;
  for (const auto& [name, e] : g.bindings()) out.push_back(static_cast<std::uint32_t>(e));
  return out;
}

// Automorphism of base for every actor element, validated against both the
// base and the actor relations.
std::vector<std::vector<std::uint32_t>> compute_action(const TablePtr& base, const TablePtr& actor,
                                                       const std::vector<ActionClause>& clauses) {
  const auto& actor_b = actor->bindings();
  const auto& base_b = base->bindings();
  for (const auto& c : clauses) {
    if (c.actor_gen.empty() && actor_b.size() != 1)
      throw InvalidAction("clause \"" + c.base_gen + "=" + c.image + "\" must name an actor generator");
    if (!c.actor_gen.empty() &&
        std::none_of(actor_b.begin(), actor_b.end(), [&](const auto& p) { return p.first == c.actor_gen; }))
      throw InvalidAction("unknown actor generator \"" + c.actor_gen + "\"");
  }
  std::vector<std::uint32_t> base_gens = gen_indices(*base);
  std::vector<std::vector<std::uint32_t>> gen_auts;
  for (const auto& [aname, aelem] : actor_b) {
    std::vector<std::uint32_t> images = base_gens;
    for (const auto& c : clauses) {
      if (!(c.actor_gen == aname || (c.actor_gen.empty() && actor_b.size() == 1))) continue;
      auto src = base->resolve(c.base_gen);
      if (!src) throw InvalidAction("unknown base generator \"" + c.base_gen + "\"");
      bool matched = false;
      for (std::size_t k = 0; k < base_b.size(); ++k)
        if (base_b[k].second == *src && base_b[k].first == c.base_gen) {
          images[k] = static_cast<std::uint32_t>(eval_word(*base, c.image));
          matched = true;
        }
      if (!matched) {
        for (std::size_t k = 0; k < base_b.size(); ++k)
          if (base_b[k].second == *src) {
            images[k] = static_cast<std::uint32_t>(eval_word(*base, c.image));
            matched = true;
          }
      }
      if (!matched) throw InvalidAction("\"" + c.base_gen + "\" is not a bound generator of the base");
    }
    auto map = extend_hom(*base, base_gens, images, *base);
    if (map.empty()) throw InvalidAction("images for actor generator \"" + aname + "\" do not define a homomorphism");
    std::vector<char> hit(base->size(), 0);
    for (auto v : map) {
      if (hit[v]) throw InvalidAction("images for actor generator \"" + aname + "\" are not bijective");
      hit[v] = 1;
    }
    gen_auts.push_back(std::move(map));
  }
  // phi(x s)(b) = phi(x)(phi(s)(b)), checked on every edge of the actor.
  std::vector<std::vector<std::uint32_t>> phi(actor->size());
  std::vector<std::uint32_t> id(base->size());
  for (std::uint32_t b = 0; b < base->size(); ++b) id[b] = b;
  phi[0] = id;
  std::deque<std::uint32_t> queue{0};
  std::size_t reached = 1;
  auto actor_gens = gen_indices(*actor);
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < actor_gens.size(); ++k) {
      auto y = actor->m(x, actor_gens[k]);
      std::vector<std::uint32_t> composed(base->size());
      for (std::uint32_t b = 0; b < base->size(); ++b) composed[b] = phi[x][gen_auts[k][b]];
      if (phi[y].empty()) {
        phi[y] = std::move(composed);
        ++reached;
        queue.push_back(y);
      } else if (phi[y] != composed) {
        throw InvalidAction("action does not respect the actor relations");
      }
    }
  }
  if (reached != actor->size()) throw InvalidAction("actor generators do not generate the actor");
  return phi;
}

GroupPtr build(const GroupExpr& e, bool use_cache);

TablePtr build_table(const GroupExpr& e) {
  auto g = build(e, true);
  auto t = std::dynamic_pointer_cast<const TableGroup>(g);
  if (!t) throw OrderLimitExceeded("\"" + e.to_string() + "\" is not realized as a dense table");
  return t;
}

std::shared_ptr<TableGroup> dense_product(const std::vector<TablePtr>& factors) {
  std::vector<std::uint32_t> radix;
  std::uint64_t n = 1;
  for (const auto& f : factors) {
    radix.push_back(f->size());
    n *= f->size();
  }
  const std::size_t k = factors.size();
  auto t = TableGroup::from_mul(static_cast<std::uint32_t>(n), [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t out = 0, mult = 1;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint32_t da = a % radix[i], db = b % radix[i];
      a /= radix[i];
      b /= radix[i];
      out += factors[i]->m(da, db) * mult;
      mult *= radix[i];
    }
    return out;
  });
  Bindings b;
  std::uint32_t mult = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::uint32_t> map(radix[i]);
    for (std::uint32_t x = 0; x < radix[i]; ++x) map[x] = x * mult;
    for (const auto& [name, e] : factors[i]->bindings()) add_binding(b, name, map[e], i);
    t->add_link({factors[i], std::move(map)});
    mult *= radix[i];
  }
  t->set_bindings(std::move(b));
  return t;
}

GroupExpr strip_named(GroupExpr e) {
  while (e.kind == ExprKind::Named && e.rename.empty()) e = named_group(e.label);
  return e;
}

std::shared_ptr<Group> build_twisted(const GroupExpr& e) {
  std::vector<TwistedGroup::Component> comps;
  for (const auto& child : e.children) {
    GroupExpr c = strip_named(child);
    TwistedGroup::Component comp;
    bool twisted = false;
    if (c.kind == ExprKind::SemidirectProduct && c.rename.empty()) {
      auto actor = build_table(c.children[1]);
      if (actor->size() == 2 && actor->bindings().size() == 1) {
        auto base = build_table(c.children[0]);
        auto phi = compute_action(base, actor, c.actions);
        comp.group = base;
        comp.twist = phi[actor->bindings()[0].second];
        comp.twist_name = actor->bindings()[0].first;
        if (base->is_perm_group() && looks_like_cycles(comp.twist_name)) {
          Perm tau = parse_cycles(comp.twist_name, base->perm_degree());
          bool conj = true;
          for (std::uint32_t b = 0; b < base->size() && conj; ++b) {
            auto img = base->perm_index(perm_mul(perm_mul(tau, base->perm(b)), tau));
            conj = img && *img == comp.twist[b];
          }
          if (conj) comp.twist_perm = tau;
        }
        twisted = true;
      }
    }
    if (!twisted) comp.group = build_table(c);
    comps.push_back(std::move(comp));
  }
  std::vector<std::uint32_t> basis;
  std::map<std::string, std::uint32_t> bit_by_name;
  {
    std::uint32_t bit = 0;
    for (const auto& c : comps)
      if (!c.twist.empty()) bit_by_name[c.twist_name] = bit++;
    if (e.words.empty()) {
      for (std::uint32_t k = 0; k < bit; ++k) basis.push_back(1u << k);
    }
  }
  std::vector<std::string> basis_names;
  for (const auto& w : e.words) {
    Word word = parse_word(w);
    std::uint32_t mask = 0;
    for (const auto& f : word.factors) {
      auto it = bit_by_name.find(f.text);
      if (f.kind == WordFactor::Kind::Sub || it == bit_by_name.end())
        throw UnknownGenerator("\"" + f.text + "\" is not an involution of this product");
      if (f.exponent % 2) mask ^= 1u << it->second;
    }
    basis.push_back(mask);
    basis_names.push_back(w);
  }
  if (e.words.empty())
    for (const auto& [name, bit] : bit_by_name) basis_names.push_back(name);
  auto g = std::make_shared<TwistedGroup>(std::move(comps), basis);
  Bindings b;
  for (std::size_t i = 0; i < g->component_count(); ++i)
    for (const auto& [name, el] : g->component(i).group->bindings())
      add_binding(b, name, g->embed(i, static_cast<std::uint32_t>(el)), i);
  if (e.words.empty()) {
    for (const auto& [name, bit] : bit_by_name) add_binding(b, name, g->twist_element(1u << bit), 0);
  } else {
    for (std::size_t k = 0; k < basis.size(); ++k) add_binding(b, basis_names[k], g->twist_element(basis[k]), 0);
  }
  g->set_bindings(std::move(b));
  return g;
}

std::shared_ptr<Group> build_direct(const GroupExpr& e) {
  std::vector<GroupPtr> factors;
  std::uint64_t order = 1;
  bool all_dense = true;
  for (const auto& c : e.children) {
    factors.push_back(build(c, true));
    order *= factors.back()->order();
    all_dense = all_dense && factors.back()->as_table();
  }
  if (all_dense && order <= engine_config().dense_product_limit) {
    std::vector<TablePtr> tables;
    for (const auto& f : factors) tables.push_back(std::dynamic_pointer_cast<const TableGroup>(f));
    return dense_product(tables);
  }
  // Structured product: components of nested structured factors are spliced
  // in when their span is complete.
  std::vector<TwistedGroup::Component> comps;
  std::vector<std::uint32_t> basis;
  std::vector<std::pair<std::size_t, std::string>> comp_factor_names;
  std::uint32_t bit = 0;
  for (const auto& f : factors) {
    if (auto t = std::dynamic_pointer_cast<const TableGroup>(f)) {
      comps.push_back({t, "", {}, std::nullopt});
    } else if (auto tw = std::dynamic_pointer_cast<const TwistedGroup>(f)) {
      if (tw->span().size() != (std::size_t{1} << tw->twist_count()))
        throw OrderLimitExceeded("direct factor with a restricted twist span");
      for (std::size_t i = 0; i < tw->component_count(); ++i) {
        comps.push_back(tw->component(i));
        if (!tw->component(i).twist.empty()) basis.push_back(1u << bit++);
      }
    } else {
      throw OrderLimitExceeded("unsupported direct factor");
    }
  }
  auto g = std::make_shared<TwistedGroup>(std::move(comps), basis);
  Bindings b;
  std::size_t ci = 0;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    if (auto t = std::dynamic_pointer_cast<const TableGroup>(factors[fi])) {
      for (const auto& [name, el] : t->bindings()) add_binding(b, name, g->embed(ci, static_cast<std::uint32_t>(el)), fi);
      ++ci;
    } else {
      auto tw = std::dynamic_pointer_cast<const TwistedGroup>(factors[fi]);
      for (std::size_t i = 0; i < tw->component_count(); ++i, ++ci) {
        for (const auto& [name, el] : tw->component(i).group->bindings())
          add_binding(b, name, g->embed(ci, static_cast<std::uint32_t>(el)), fi);
        if (!tw->component(i).twist.empty())
          add_binding(b, tw->component(i).twist_name, g->twist_element(1u << g->twist_bit(ci)), fi);
      }
    }
  }
  g->set_bindings(std::move(b));
  return g;
}

std::shared_ptr<Group> build_central(const GroupExpr& e) {
  auto A = build_table(e.children[0]);
  auto B = build_table(e.children[1]);
  auto u = static_cast<std::uint32_t>(eval_word(*A, e.words[0]));
  auto v = static_cast<std::uint32_t>(eval_word(*B, e.words[1]));
  if (A->profile().centralizer[u] != A->size()) throw CentralIdentificationError("\"" + e.words[0] + "\" is not central");
  if (B->profile().centralizer[v] != B->size()) throw CentralIdentificationError("\"" + e.words[1] + "\" is not central");
  const std::uint32_t k = A->element_order(u);
  if (k != B->element_order(v)) throw CentralIdentificationError("identified elements have different orders");
  const std::uint32_t na = A->size(), nb = B->size();
  const std::uint64_t total = static_cast<std::uint64_t>(na) * nb / k;
  if (total > engine_config().table_limit) throw OrderLimitExceeded("central product of order " + std::to_string(total));
  // Pair (x, y) has index x + na*y; cosets of <(u, v^-1)> are numbered by
  // their least index.
  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> coset(static_cast<std::size_t>(na) * nb, kUnset);
  std::vector<std::uint32_t> reps;
  const std::uint32_t vinv = B->i(v);
  for (std::uint32_t idx = 0; idx < na * nb; ++idx) {
    if (coset[idx] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(idx);
    std::uint32_t x = idx % na, y = idx / na;
    for (std::uint32_t j = 0; j < k; ++j) {
      coset[x + na * y] = id;
      x = A->m(x, u);
      y = B->m(y, vinv);
    }
  }
  auto t = TableGroup::from_mul(static_cast<std::uint32_t>(reps.size()), [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t ra = reps[a], rb = reps[b];
    return coset[A->m(ra % na, rb % na) + na * B->m(ra / na, rb / na)];
  });
  Bindings bind;
  std::vector<std::uint32_t> amap(na), bmap(nb);
  for (std::uint32_t x = 0; x < na; ++x) amap[x] = coset[x];
  for (std::uint32_t y = 0; y < nb; ++y) bmap[y] = coset[na * y];
  for (const auto& [name, el] : A->bindings()) add_binding(bind, name, amap[el], 0);
  for (const auto& [name, el] : B->bindings()) add_binding(bind, name, bmap[el], 1);
  t->add_link({A, std::move(amap)});
  t->add_link({B, std::move(bmap)});
  t->set_bindings(std::move(bind));
  return t;
}

std::shared_ptr<Group> build_semidirect(const GroupExpr& e) {
  auto base = build_table(e.children[0]);
  auto actor = build_table(e.children[1]);
  auto phi = compute_action(base, actor, e.actions);
  const std::uint32_t nb = base->size(), na = actor->size();
  if (static_cast<std::uint64_t>(nb) * na > engine_config().table_limit)
    throw OrderLimitExceeded("semidirect product of order " + std::to_string(static_cast<std::uint64_t>(nb) * na));
  auto t = TableGroup::from_mul(nb * na, [&](std::uint32_t x, std::uint32_t y) {
    std::uint32_t b1 = x % nb, a1 = x / nb, b2 = y % nb, a2 = y / nb;
    return base->m(b1, phi[a1][b2]) + nb * actor->m(a1, a2);
  });
  Bindings b;
  std::vector<std::uint32_t> bmap(nb), amap(na);
  for (std::uint32_t x = 0; x < nb; ++x) bmap[x] = x;
  for (std::uint32_t a = 0; a < na; ++a) amap[a] = nb * a;
  for (const auto& [name, el] : base->bindings()) add_binding(b, name, bmap[el], 0);
  for (const auto& [name, el] : actor->bindings()) add_binding(b, name, amap[el], 1);
  t->add_link({base, std::move(bmap)});
  t->add_link({actor, std::move(amap)});
  t->set_bindings(std::move(b));
  return t;
}

std::shared_ptr<Group> build_basic(const GroupExpr& e) {
  const auto limit = engine_config().table_limit;
  auto need = [&](std::uint64_t order) {
    if (order > limit) throw OrderLimitExceeded("\"" + e.to_string() + "\" has order " + std::to_string(order));
    return static_cast<std::uint32_t>(order);
  };
  switch (e.kind) {
    case ExprKind::Cyclic: {
      const auto n = need(static_cast<std::uint64_t>(e.ints[0]));
      if (n == 0) throw ParseError("C(0)");
      auto t = TableGroup::from_mul(n, [n](std::uint32_t a, std::uint32_t b) { return (a + b) % n; });
      t->set_bindings({{"g", n > 1 ? 1u : 0u}});
      return t;
    }
    case ExprKind::ElemAbelian: {
      const auto p = static_cast<std::uint32_t>(e.ints[0]);
      const auto k = static_cast<std::uint32_t>(e.ints[1]);
      if (!is_prime(p)) throw ParseError("EA needs a prime");
      std::uint64_t order = 1;
      for (std::uint32_t j = 0; j < k; ++j) order *= p;
      const auto n = need(order);
      auto t = TableGroup::from_mul(n, [p, k](std::uint32_t a, std::uint32_t b) {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t j = 0; j < k; ++j) {
          out += ((a % p + b % p) % p) * mult;
          a /= p;
          b /= p;
          mult *= p;
        }
        return out;
      });
      Bindings b;
      std::uint32_t mult = 1;
      for (std::uint32_t j = 0; j < k; ++j, mult *= p) b.emplace_back("e" + std::to_string(j + 1), mult);
      t->set_bindings(std::move(b));
      return t;
    }
    case ExprKind::Dihedral: {
      const auto r = static_cast<std::uint32_t>(e.ints[0]);
      if (r == 0) throw ParseError("D(0)");
      need(2ull * r);
      // a^i b^j has index i + r*j.
      auto t = TableGroup::from_mul(2 * r, [r](std::uint32_t x, std::uint32_t y) {
        std::uint32_t i1 = x % r, j1 = x / r, i2 = y % r, j2 = y / r;
        std::uint32_t i = j1 ? (i1 + r - i2) % r : (i1 + i2) % r;
        return i + r * (j1 ^ j2);
      });
      t->set_bindings({{"a", 1 % r}, {"b", r}});
      return t;
    }
    case ExprKind::Dicyclic: {
      const auto r = static_cast<std::uint32_t>(e.ints[0]);
      if (r == 0) throw ParseError("Q(0)");
      need(4ull * r);
      const std::uint32_t m = 2 * r;
      // a^i b^j has index i + 2r*j; b a = a^-1 b and b^2 = a^r.
      auto t = TableGroup::from_mul(4 * r, [r, m](std::uint32_t x, std::uint32_t y) {
        std::uint32_t i1 = x % m, j1 = x / m, i2 = y % m, j2 = y / m;
        if (!j1) return (i1 + i2) % m + m * j2;
        std::uint32_t i = (i1 + m - i2) % m;
        if (!j2) return i + m;
        return (i + r) % m;
      });
      t->set_bindings({{"a", 1}, {"b", m}});
      return t;
    }
    case ExprKind::Symmetric:
    case ExprKind::Alternating: {
      const auto n = static_cast<std::size_t>(e.ints[0]);
      if (n == 0) throw ParseError("degree 0");
      std::uint64_t fact = 1;
      for (std::size_t j = 2; j <= n; ++j) fact *= j;
      if (e.kind == ExprKind::Alternating && n >= 2) fact /= 2;
      need(fact);
      std::vector<std::string> gens;
      if (e.kind == ExprKind::Symmetric) {
        if (n >= 2) gens.push_back("(12)");
        if (n >= 3) {
          std::vector<std::size_t> pts;
          for (std::size_t j = 1; j <= n; ++j) pts.push_back(j);
          gens.push_back(cycle_name(pts));
        }
      } else {
        for (std::size_t j = 3; j <= n; ++j) gens.push_back(cycle_name({1, 2, j}));
      }
      if (gens.empty()) gens.push_back("()");
      return perm_group(n, gens);
    }
    case ExprKind::PermGroup: {
      auto gens = e.words;
      if (gens.empty()) gens.push_back("()");
      return perm_group(static_cast<std::size_t>(e.ints[0]), gens);
    }
    default:
      break;
  }
  throw ParseError("not a basic constructor");
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
std::unordered_map<std::string, GroupPtr>& named_cache() {
  static std::unordered_map<std::string, GroupPtr> c;
  return c;
}

GroupPtr build(const GroupExpr& e, bool use_cache) {
  if (e.kind == ExprKind::Named && e.rename.empty() && use_cache) {
    {
      std::lock_guard lock(cache_mutex());
      auto it = named_cache().find(e.label);
      if (it != named_cache().end()) return it->second;
    }
    GroupExpr recipe = named_group(e.label);
    auto g = std::const_pointer_cast<Group>(build(recipe, false));
    g->set_expr(e);
    std::lock_guard lock(cache_mutex());
    return named_cache().emplace(e.label, g).first->second;
  }
  std::shared_ptr<Group> g;
  switch (e.kind) {
    case ExprKind::DirectProduct: g = build_direct(e); break;
    case ExprKind::SemidirectProduct: g = build_semidirect(e); break;
    case ExprKind::CentralProduct: g = build_central(e); break;
    case ExprKind::Quotient: {
      auto src = build_table(e.children[0]);
      std::vector<Elem> gens;
      for (const auto& w : e.words) gens.push_back(eval_word(*src, w));
      g = std::const_pointer_cast<TableGroup>(quotient(src, gens).group);
      break;
    }
    case ExprKind::Named: {
      GroupExpr recipe = named_group(e.label);
      g = std::const_pointer_cast<Group>(build(recipe, false));
      break;
    }
    case ExprKind::Twisted: g = build_twisted(e); break;
    default: g = build_basic(e); break;
  }
  if (!e.rename.empty()) {
    auto b = g->bindings();
    if (e.rename.size() > b.size())
      throw ParseError("rename list longer than the generator list of \"" + e.to_string() + "\"");
    for (std::size_t k = 0; k < e.rename.size(); ++k) b[k].first = e.rename[k];
    g->set_bindings(std::move(b));
  }
  g->set_expr(e);
  return g;
}

}  // namespace

const EngineConfig& engine_config() { return config_storage(); }
void set_engine_config(const EngineConfig& config) { config_storage() = config; }

GroupPtr construct(const GroupExpr& expr) { return build(expr, true); }
GroupPtr construct(std::string_view text) { return construct(parse_group_expr(text)); }

TablePtr construct_table(const GroupExpr& expr) { return build_table(expr); }
TablePtr construct_table(std::string_view text) { return construct_table(parse_group_expr(text)); }

std::uint64_t predicted_order(const GroupExpr& e) {
  switch (e.kind) {
    case ExprKind::Cyclic: return static_cast<std::uint64_t>(e.ints[0]);
    case ExprKind::ElemAbelian: {
      std::uint64_t o = 1;
      for (long j = 0; j < e.ints[1]; ++j) o *= static_cast<std::uint64_t>(e.ints[0]);
      return o;
    }
    case ExprKind::Dihedral: return 2 * static_cast<std::uint64_t>(e.ints[0]);
    case ExprKind::Dicyclic: return 4 * static_cast<std::uint64_t>(e.ints[0]);
    case ExprKind::Symmetric:
    case ExprKind::Alternating: {
      std::uint64_t f = 1;
      for (long j = 2; j <= e.ints[0]; ++j) f *= static_cast<std::uint64_t>(j);
      return e.kind == ExprKind::Alternating && e.ints[0] >= 2 ? f / 2 : f;
    }
    case ExprKind::DirectProduct: {
      std::uint64_t o = 1;
      for (const auto& c : e.children) o *= predicted_order(c);
      return o;
    }
    case ExprKind::SemidirectProduct: return predicted_order(e.children[0]) * predicted_order(e.children[1]);
    case ExprKind::CentralProduct: {
      auto A = build_table(e.children[0]);
      auto u = eval_word(*A, e.words[0]);
      return predicted_order(e.children[0]) * predicted_order(e.children[1]) / A->element_order(static_cast<std::uint32_t>(u));
    }
    case ExprKind::Quotient: {
      auto G = build_table(e.children[0]);
      std::vector<Elem> gens;
      for (const auto& w : e.words) gens.push_back(eval_word(*G, w));
      return G->size() / generated_subgroup(G, gens).order();
    }
    case ExprKind::PermGroup: return construct(e)->order();
    case ExprKind::Named: return predicted_order(named_group(e.label));
    case ExprKind::Twisted: return construct(e)->order();
  }
  return 0;
}

}  // namespace mge
