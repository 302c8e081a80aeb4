#include "mge/morphisms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mge/construct.hpp"
#include "mge/error.hpp"
#include "mge/ops.hpp"

namespace mge {

namespace {

template <class T>
std::vector<std::pair<T, std::uint32_t>> tally(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  std::vector<std::pair<T, std::uint32_t>> out;
  for (const auto& x : v) {
    if (out.empty() || out.back().first != x)
      out.emplace_back(x, 1);
    else
      ++out.back().second;
  }
  return out;
}

template <class Pairs>
void write_pairs(std::ostringstream& os, const Pairs& v) {
  bool first = true;
  for (const auto& [a, b] : v) {
    os << (first ? "" : ",") << a << ":" << b;
    first = false;
  }
}

template <class List>
void write_list(std::ostringstream& os, const List& v) {
  bool first = true;
  for (const auto& a : v) {
    os << (first ? "" : ",") << a;
    first = false;
  }
}

}  // namespace

std::string Fingerprint::canonical() const {
  std::ostringstream os;
  os << "n=" << order << ";ab=" << (abelian ? 1 : 0) << ";ord=";
  write_pairs(os, element_orders);
  os << ";z=" << center_order << ";d=" << derived_order << ";exp=" << exponent << ";cls=";
  write_pairs(os, class_sizes);
  os << ";inv=";
  write_list(os, abelian_invariants);
  os << ";gab=";
  write_list(os, abelianization);
  os << ";prof=";
  write_list(os, profile_counts);
  return os.str();
}

Fingerprint fingerprint(const TableGroup& g) {
  TablePtr self(std::shared_ptr<const TableGroup>{}, &g);  // non-owning view
  Fingerprint f;
  const auto& prof = g.profile();
  f.order = g.size();
  f.abelian = is_abelian(g);
  f.element_orders = tally(prof.order);
  f.center_order = static_cast<std::uint64_t>(std::count(prof.centralizer.begin(), prof.centralizer.end(), g.size()));
  f.exponent = 1;
  for (auto o : prof.order) f.exponent = std::lcm(f.exponent, static_cast<std::uint64_t>(o));
  f.class_sizes = tally(conjugacy_class_sizes(g));
  if (f.abelian) {
    f.derived_order = 1;
    f.abelian_invariants = abelian_invariants(g);
    f.abelianization = f.abelian_invariants;
  } else {
    auto d = derived_subgroup(self);
    f.derived_order = d.order();
    auto q = quotient(self, d.generators);
    f.abelianization = abelian_invariants(*q.group);
  }
  std::uint32_t classes = 0;
  for (auto c : prof.cls) classes = std::max(classes, c + 1);
  f.profile_counts.assign(classes, 0);
  for (auto c : prof.cls) ++f.profile_counts[c];
  return f;
}

const char* kind_name(MorphismKind k) {
  switch (k) {
    case MorphismKind::Homomorphism: return "homomorphism";
    case MorphismKind::Monomorphism: return "monomorphism";
    case MorphismKind::Isomorphism: return "isomorphism";
  }
  return "homomorphism";
}

bool Morphism::verify() const {
  const auto n = source->size();
  if (map.size() != n) return false;
  const Group& t = *target;
  for (auto y : map)
    if (!t.contains(y)) return false;
  if (map[0] != t.identity()) return false;
  for (std::size_t k = 0; k < generators.size(); ++k)
    if (k >= images.size() || map[generators[k]] != images[k]) return false;
  if (n <= 1024) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        if (map[source->m(a, b)] != t.mul(map[a], map[b])) return false;
  } else {
    // Checking every edge x -> x*s for generators s of the source proves
    // the homomorphism property; the generators must generate the source.
    if (generated_subgroup(source, {generators.begin(), generators.end()}).order() != n) return false;
    for (std::uint32_t a = 0; a < n; ++a)
      for (auto s : generators)
        if (map[source->m(a, s)] != t.mul(map[a], map[s])) return false;
  }
  if (kind == MorphismKind::Homomorphism) return true;
  std::vector<Elem> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (kind == MorphismKind::Isomorphism) return t.order() == n;
  return true;
}

nlohmann::json Morphism::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  j["source"] = source->expr().to_string();
  j["target"] = target->expr().to_string();
  auto& gw = j["generators"] = nlohmann::json::array();
  auto& iw = j["images"] = nlohmann::json::array();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    gw.push_back(source->describe(generators[k]));
    iw.push_back(target->describe(images[k]));
  }
  return j;
}

Morphism compose(const Morphism& first, const Morphism& second) {
  const auto* mid = second.source.get();
  if (first.target.get() != mid && first.target->as_table() != mid)
    throw InvalidAction("composition needs matching middle group");
  Morphism out;
  out.source = first.source;
  out.target = second.target;
  out.generators = first.generators;
  out.map.resize(first.map.size());
  for (std::size_t x = 0; x < first.map.size(); ++x) out.map[x] = second.map[first.map[x]];
  for (auto g : out.generators) out.images.push_back(out.map[g]);
  auto rank = [](MorphismKind k) { return static_cast<int>(k); };
  out.kind = static_cast<MorphismKind>(std::min(rank(first.kind), rank(second.kind)));
  return out;
}

Morphism inverse(const Morphism& iso) {
  auto tgt = std::dynamic_pointer_cast<const TableGroup>(iso.target);
  if (!tgt || iso.kind != MorphismKind::Isomorphism) throw InvalidAction("only dense isomorphisms are inverted");
  Morphism out;
  out.source = tgt;
  out.target = iso.source;
  out.kind = MorphismKind::Isomorphism;
  out.map.assign(tgt->size(), 0);
  for (std::size_t x = 0; x < iso.map.size(); ++x) out.map[iso.map[x]] = x;
  out.generators = generating_sequence(*tgt);
  for (auto g : out.generators) out.images.push_back(out.map[g]);
  return out;
}

std::optional<Morphism> replay(const TablePtr& source, const GroupPtr& target, const std::vector<std::string>& source_words,
                               const std::vector<std::string>& image_words, MorphismKind kind) {
  if (source_words.size() != image_words.size()) return std::nullopt;
  std::vector<std::uint32_t> gens;
  std::vector<Elem> imgs;
  for (std::size_t k = 0; k < source_words.size(); ++k) {
    gens.push_back(static_cast<std::uint32_t>(eval_word(*source, source_words[k])));
    imgs.push_back(eval_word(*target, image_words[k]));
  }
  // Extend along the Cayley graph of the source and let verify() judge.
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> map(source->size(), kUnset);
  map[0] = target->identity();
  std::vector<std::uint32_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto x = queue[q];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto y = source->m(x, gens[k]);
      if (map[y] != kUnset) continue;
      map[y] = target->mul(map[x], imgs[k]);
      queue.push_back(y);
    }
  }
  if (queue.size() != source->size()) return std::nullopt;
  Morphism m{source, target, kind, gens, imgs, std::move(map)};
  if (!m.verify()) return std::nullopt;
  return m;
}

std::vector<std::uint32_t> generating_sequence(const TableGroup& g) {
  const auto n = g.size();
  std::vector<std::uint32_t> gens;
  std::vector<char> in(n, 0);
  std::vector<std::uint32_t> elems{0};
  in[0] = 1;
  const auto& prof = g.profile();
  auto closure_with = [&](std::uint32_t extra, bool commit) {
    std::vector<char> mark = in;
    std::vector<std::uint32_t> list = elems;
    std::vector<std::uint32_t> all = gens;
    all.push_back(extra);
    if (!mark[extra]) {
      mark[extra] = 1;
      list.push_back(extra);
    }
    for (std::size_t k = 0; k < list.size(); ++k)
      for (auto s : all) {
        auto y = g.m(list[k], s);
        if (!mark[y]) {
          mark[y] = 1;
          list.push_back(y);
        }
      }
    std::size_t size = list.size();
    if (commit) {
      in = std::move(mark);
      elems = std::move(list);
    }
    return size;
  };
  while (elems.size() < n) {
    std::uint32_t best = 0, best_order = 0;
    std::size_t best_growth = 0;
    for (std::uint32_t x = 1; x < n; ++x) {
      if (in[x] || prof.order[x] < best_order) continue;
      if (prof.order[x] > best_order) {
        best_order = prof.order[x];
        best_growth = 0;
      }
      auto growth = closure_with(x, false);
      if (growth > best_growth) {
        best_growth = growth;
        best = x;
      }
    }
    gens.push_back(best);
    closure_with(best, true);
  }
  return gens;
}

namespace {

// Per-level closure plan of a source generating sequence. Level i adds
// generator i; its steps define the images of the new elements and its
// checks are the remaining Cayley edges that must commute.
struct Plan {
  struct Step {
    std::uint32_t elem, parent, gen;
  };
  struct Check {
    std::uint32_t u, gen, w;
  };
  std::vector<std::uint32_t> gens;
  std::vector<std::vector<Step>> steps;
  std::vector<std::vector<Check>> checks;
};

Plan make_plan(const TableGroup& g, std::vector<std::uint32_t> gens) {
  Plan p;
  p.gens = std::move(gens);
  const auto k = p.gens.size();
  p.steps.resize(k);
  p.checks.resize(k);
  std::vector<char> in(g.size(), 0);
  in[0] = 1;
  std::vector<std::uint32_t> members{0};
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t old_count = members.size();
    auto visit = [&](std::uint32_t u, std::uint32_t j) {
      auto w = g.m(u, p.gens[j]);
      if (!in[w]) {
        in[w] = 1;
        members.push_back(w);
        p.steps[i].push_back({w, u, j});
      } else {
        p.checks[i].push_back({u, j, w});
      }
    };
    for (std::size_t q = 0; q < old_count; ++q) visit(members[q], static_cast<std::uint32_t>(i));
    for (std::size_t q = old_count; q < members.size(); ++q)
      for (std::uint32_t j = 0; j <= i; ++j) visit(members[q], j);
  }
  return p;
}

struct TableTarget {
  const TableGroup* g;
  Elem mul(Elem a, Elem b) const { return g->m(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)); }
};
struct GenericTarget {
  const Group* g;
  Elem mul(Elem a, Elem b) const { return g->mul(a, b); }
};

template <class Target>
class Backtrack {
 public:
  Backtrack(const Plan& plan, Target target, Elem identity, std::vector<std::vector<Elem>> candidates,
            std::uint64_t node_budget, bool linear_shortcut, std::vector<char>* image_marks)
      : plan_(plan),
        t_(target),
        e_(identity),
        cand_(std::move(candidates)),
        budget_(node_budget),
        linear_(linear_shortcut),
        marks_(image_marks) {}

  // fn returns false to stop.
  template <class Fn>
  void run(std::uint32_t source_order, Fn&& fn) {
    map_.assign(source_order, e_);
    img_.assign(plan_.gens.size(), e_);
    stop_ = false;
    rec(0, fn);
  }
  const std::vector<Elem>& map() const { return map_; }
  const std::vector<Elem>& images() const { return img_; }

 private:
  template <class Fn>
  void rec(std::size_t level, Fn& fn) {
    if (level == plan_.gens.size()) {
      if (!fn(*this)) stop_ = true;
      return;
    }
    const auto& steps = plan_.steps[level];
    const auto& checks = plan_.checks[level];
    for (Elem y : cand_[level]) {
      if (stop_) return;
      if (++nodes_ > budget_) throw SearchBudgetExceeded("search passed " + std::to_string(budget_) + " nodes");
      if (linear_ && (*marks_)[y]) continue;
      img_[level] = y;
      bool ok = true;
      std::size_t done = 0;
      for (; done < steps.size(); ++done) {
        const auto& st = steps[done];
        Elem v = t_.mul(map_[st.parent], img_[st.gen]);
        if (v == e_) {
          ok = false;
          break;
        }
        map_[st.elem] = v;
      }
      if (ok && !linear_) {
        for (const auto& c : checks)
          if (t_.mul(map_[c.u], img_[c.gen]) != map_[c.w]) {
            ok = false;
            break;
          }
      }
      if (ok) {
        if (linear_)
          for (const auto& st : steps) (*marks_)[map_[st.elem]] = 1;
        rec(level + 1, fn);
        if (linear_)
          for (const auto& st : steps) (*marks_)[map_[st.elem]] = 0;
      }
    }
  }

  const Plan& plan_;
  Target t_;
  Elem e_;
  std::vector<std::vector<Elem>> cand_;
  std::uint64_t budget_;
  bool linear_;
  std::vector<char>* marks_;
  std::vector<Elem> map_, img_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

// Candidates for mapping a dense source into a dense target: same order,
// and for isomorphisms the same refined profile class; for embeddings the
// target centralizer and square-root counts can only grow.
std::vector<std::vector<Elem>> table_candidates(const TableGroup& src, const Plan& plan, const TableGroup& dst, bool iso) {
  const auto& ps = src.profile();
  const auto& pd = dst.profile();
  std::vector<std::vector<Elem>> out;
  for (auto x : plan.gens) {
    std::vector<Elem> c;
    for (std::uint32_t y = 0; y < dst.size(); ++y) {
      if (pd.order[y] != ps.order[x]) continue;
      if (iso) {
        if (pd.cls[y] != ps.cls[x]) continue;
      } else if (pd.centralizer[y] < ps.centralizer[x] || pd.roots[y] < ps.roots[x]) {
        continue;
      }
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool has_order(const Group& g, Elem y, std::uint64_t o) {
  if (g.pow(y, static_cast<long>(o)) != g.identity()) return false;
  for (auto q : prime_factors(o))
    if (g.pow(y, static_cast<long>(o / q)) == g.identity()) return false;
  return true;
}

Morphism finish(const TablePtr& src, GroupPtr dst, MorphismKind kind, const Plan& plan, const std::vector<Elem>& map,
                const std::vector<Elem>& images) {
  Morphism m;
  m.source = src;
  m.target = std::move(dst);
  m.kind = kind;
  m.generators = plan.gens;
  m.images = images;
  m.map = map;
  return m;
}

bool elementary_abelian(const TableGroup& g) {
  if (g.size() < 2) return false;
  const auto p = g.profile().order[1];
  if (!is_prime(p)) return false;
  for (std::uint32_t x = 1; x < g.size(); ++x)
    if (g.profile().order[x] != p) return false;
  return is_abelian(g);
}

}  // namespace

std::optional<Morphism> is_isomorphic(const TablePtr& a, const TablePtr& b, const SearchOptions& opts) {
  if (a->size() != b->size()) return std::nullopt;
  if (!(fingerprint(*a) == fingerprint(*b))) return std::nullopt;
  return find_isomorphism(a, b, opts);
}

std::optional<Morphism> find_isomorphism(const TablePtr& a, const TablePtr& b, const SearchOptions& opts) {
  if (a->size() != b->size()) return std::nullopt;
  Plan plan = make_plan(*a, generating_sequence(*a));
  Backtrack<TableTarget> bt(plan, {b.get()}, 0, table_candidates(*a, plan, *b, true), opts.node_budget, false, nullptr);
  std::optional<Morphism> found;
  bt.run(a->size(), [&](const auto& s) {
    found = finish(a, b, MorphismKind::Isomorphism, plan, s.map(), s.images());
    return false;
  });
  return found;
}

std::optional<Morphism> find_embedding(const TablePtr& h, const GroupPtr& g, const std::vector<std::size_t>& support,
                                       const SearchOptions& opts) {
  if (g->order() % h->size() != 0) return std::nullopt;
  Plan plan = make_plan(*h, generating_sequence(*h));
  std::optional<Morphism> found;
  auto take = [&](const auto& s) {
    found = finish(h, g, h->size() == g->order() ? MorphismKind::Isomorphism : MorphismKind::Monomorphism, plan,
                   s.map(), s.images());
    return false;
  };
  if (const auto* t = g->as_table()) {
    if (exponent(*t) % exponent(*h) != 0) return std::nullopt;
    Backtrack<TableTarget> bt(plan, {t}, 0, table_candidates(*h, plan, *t, false), opts.node_budget, false, nullptr);
    bt.run(h->size(), take);
    return found;
  }
  const auto* tw = dynamic_cast<const TwistedGroup*>(g.get());
  if (!tw) throw InvalidAction("unsupported target representation");
  std::vector<std::size_t> comps = support;
  if (comps.empty())
    for (std::size_t i = 0; i < tw->component_count(); ++i) comps.push_back(i);
  if (tw->support_size(comps) > opts.pool_limit)
    throw SearchBudgetExceeded("candidate pool of " + std::to_string(tw->support_size(comps)) +
                               " elements; restrict the support");
  std::vector<Elem> pool;
  tw->for_each_in_support(comps, [&](Elem x) { pool.push_back(x); });
  std::sort(pool.begin(), pool.end());
  std::map<std::uint32_t, std::vector<Elem>> by_order;
  std::vector<std::vector<Elem>> cands;
  for (auto x : plan.gens) {
    auto o = h->element_order(x);
    auto it = by_order.find(o);
    if (it == by_order.end()) {
      std::vector<Elem> c;
      for (auto y : pool)
        if (has_order(*g, y, o)) c.push_back(y);
      it = by_order.emplace(o, std::move(c)).first;
    }
    cands.push_back(it->second);
  }
  Backtrack<GenericTarget> bt(plan, {g.get()}, g->identity(), std::move(cands), opts.node_budget, false, nullptr);
  bt.run(h->size(), take);
  return found;
}

std::uint64_t for_each_automorphism_generic(const TablePtr& g,
                                            const std::function<bool(const std::vector<std::uint32_t>&)>& fn,
                                            std::uint64_t budget) {
  Plan plan = make_plan(*g, generating_sequence(*g));
  Backtrack<TableTarget> bt(plan, {g.get()}, 0, table_candidates(*g, plan, *g, true), std::uint64_t{1} << 62, false,
                            nullptr);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> out(g->size());
  bt.run(g->size(), [&](const auto& s) {
    if (++count > budget) throw AutBudgetExceeded("more than " + std::to_string(budget) + " automorphisms");
    for (std::uint32_t x = 0; x < g->size(); ++x) out[x] = static_cast<std::uint32_t>(s.map()[x]);
    return fn(out);
  });
  return count;
}

std::uint64_t for_each_automorphism(const TablePtr& g, const std::function<bool(const std::vector<std::uint32_t>&)>& fn,
                                    std::uint64_t budget) {
  if (!elementary_abelian(*g)) return for_each_automorphism_generic(g, fn, budget);
  // Invertible linear maps: each basis image avoids the span of the earlier ones.
  Plan plan = make_plan(*g, generating_sequence(*g));
  std::vector<std::vector<Elem>> cands(plan.gens.size());
  for (auto& c : cands)
    for (std::uint32_t y = 1; y < g->size(); ++y) c.push_back(y);
  std::vector<char> marks(g->size(), 0);
  marks[0] = 1;
  Backtrack<TableTarget> bt(plan, {g.get()}, 0, std::move(cands), std::uint64_t{1} << 62, true, &marks);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> out(g->size());
  bt.run(g->size(), [&](const auto& s) {
    if (++count > budget) throw AutBudgetExceeded("more than " + std::to_string(budget) + " automorphisms");
    for (std::uint32_t x = 0; x < g->size(); ++x) out[x] = static_cast<std::uint32_t>(s.map()[x]);
    return fn(out);
  });
  return count;
}

std::uint64_t automorphism_count(const TablePtr& g, std::uint64_t budget) {
  return for_each_automorphism(g, [](const auto&) { return true; }, budget);
}

}  // namespace mge
