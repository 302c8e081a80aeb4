#include "properties.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "mge/enumerator.hpp"
#include "mge/morphisms.hpp"
#include "mge/ops.hpp"
#include "mge/verifier.hpp"

namespace mge::props {

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(0x70726f70);
  return r;
}

std::uint32_t uniform(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng()); }

std::uint32_t fail(PropertyResult& r, const std::string& why) {
  if (r.ok) r.detail = why;
  r.ok = false;
  return 0;
}

// Elements of the subgroup generated by gens, by plain breadth-first closure.
std::vector<std::uint32_t> closure(const TableGroup& g, const std::vector<std::uint32_t>& gens) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> out{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < out.size(); ++q)
    for (auto s : gens) {
      auto y = g.m(out[q], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

std::uint32_t comm(const TableGroup& g, std::uint32_t a, std::uint32_t b) {
  return g.m(g.m(g.i(a), g.i(b)), g.m(a, b));
}

bool commute(const TableGroup& g, std::uint32_t a, std::uint32_t b) { return g.m(a, b) == g.m(b, a); }

}  // namespace

PropertyResult lagrange(std::uint32_t max_order) {
  PropertyResult r{"lagrange", true, {}};
  std::size_t groups = 0, subgroups = 0;
  for (std::uint32_t n = 1; n <= max_order; ++n)
    for (const auto& e : enumerate_groups(n).entries) {
      const auto& g = *e.group;
      ++groups;
      auto ex = exponent(g);
      if (n % ex) fail(r, "exponent does not divide order " + std::to_string(n));
      for (std::uint32_t x = 0; x < g.size(); ++x)
        if (ex % g.element_order(x)) fail(r, "element order does not divide exponent at order " + std::to_string(n));
      for (int s = 0; s < 12; ++s) {
        auto sub = closure(g, {uniform(n), uniform(n)});
        ++subgroups;
        if (n % sub.size()) fail(r, "subgroup of order " + std::to_string(sub.size()) + " in order " + std::to_string(n));
        auto engine = generated_subgroup(e.group, {sub.size() > 1 ? sub[1] : 0});
        if (n % engine.order()) fail(r, "engine closure violates Lagrange at order " + std::to_string(n));
      }
    }
  if (r.ok) r.detail = std::to_string(groups) + " groups, " + std::to_string(subgroups) + " sampled subgroups";
  return r;
}

PropertyResult class_equation(std::uint32_t max_order) {
  PropertyResult r{"class equation", true, {}};
  std::size_t groups = 0;
  for (std::uint32_t n = 1; n <= max_order; ++n)
    for (const auto& e : enumerate_groups(n).entries) {
      const auto& g = *e.group;
      ++groups;
      std::vector<char> done(n, 0);
      std::vector<std::uint32_t> sizes;
      for (std::uint32_t x = 0; x < n; ++x) {
        if (done[x]) continue;
        std::uint32_t size = 0;
        for (std::uint32_t y = 0; y < n; ++y) {
          auto c = g.m(g.m(g.i(y), x), y);
          if (!done[c]) {
            done[c] = 1;
            ++size;
          }
        }
        sizes.push_back(size);
      }
      std::uint64_t total = 0;
      std::size_t singletons = 0;
      for (auto s : sizes) {
        total += s;
        singletons += s == 1;
        if (n % s) fail(r, "class size " + std::to_string(s) + " does not divide " + std::to_string(n));
      }
      if (total != n) fail(r, "class sizes sum to " + std::to_string(total) + " at order " + std::to_string(n));
      if (singletons != center(e.group).order()) fail(r, "central classes disagree with the center at order " + std::to_string(n));
      auto engine = conjugacy_class_sizes(g);
      std::sort(engine.begin(), engine.end());
      std::sort(sizes.begin(), sizes.end());
      if (engine != sizes) fail(r, "engine class sizes differ from the scan at order " + std::to_string(n));
    }
  if (r.ok) r.detail = std::to_string(groups) + " groups";
  return r;
}

PropertyResult fingerprint_soundness(std::uint32_t max_order, std::uint32_t pair_limit) {
  PropertyResult r{"fingerprint soundness", true, {}};
  std::size_t copies = 0, pairs = 0;
  for (std::uint32_t n = 1; n <= max_order; ++n) {
    const auto& cat = enumerate_groups(n);
    for (const auto& e : cat.entries) {
      const auto& g = *e.group;
      std::vector<std::uint32_t> relabel(n);
      for (std::uint32_t x = 0; x < n; ++x) relabel[x] = x;
      std::shuffle(relabel.begin() + 1, relabel.end(), rng());
      std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          table[static_cast<std::size_t>(relabel[a]) * n + relabel[b]] = static_cast<std::uint16_t>(relabel[g.m(a, b)]);
      TablePtr copy = TableGroup::from_raw(n, std::move(table));
      ++copies;
      if (!(fingerprint(*copy) == fingerprint(g))) fail(r, "relabeling changed a fingerprint at order " + std::to_string(n));
      auto iso = is_isomorphic(e.group, copy);
      if (!iso || !iso->verify()) fail(r, "relabeled copy not found isomorphic at order " + std::to_string(n));
    }
    if (n > pair_limit) continue;
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
      for (std::size_t j = i + 1; j < cat.entries.size(); ++j) {
        if (cat.entries[i].fingerprint == cat.entries[j].fingerprint) continue;
        ++pairs;
        if (find_isomorphism(cat.entries[i].group, cat.entries[j].group))
          fail(r, "groups with different fingerprints are isomorphic at order " + std::to_string(n));
      }
  }
  if (r.ok) r.detail = std::to_string(copies) + " relabeled copies, " + std::to_string(pairs) + " fingerprint-separated pairs";
  return r;
}

PropertyResult commutator_centralizer(std::uint32_t max_order, std::uint32_t samples_per_group) {
  PropertyResult r{"commutator centralizer property", true, {}};
  std::size_t hypotheses = 0, nontrivial = 0;
  for (std::uint32_t n = 1; n <= max_order; ++n)
    for (const auto& e : enumerate_groups(n).entries) {
      const auto& g = *e.group;
      for (std::uint32_t s = 0; s < samples_per_group; ++s) {
        auto a_set = closure(g, {uniform(n), uniform(n)});
        auto b_set = closure(g, {uniform(n), uniform(n)});
        std::vector<std::uint32_t> ab_gens;
        for (auto a : a_set)
          for (auto b : b_set) ab_gens.push_back(comm(g, a, b));
        auto ab = closure(g, ab_gens);
        bool hyp = true;
        for (auto b : b_set)
          for (auto c : ab) hyp = hyp && commute(g, b, c);
        for (auto c : ab)
          for (auto d : ab) hyp = hyp && commute(g, c, d);
        if (!hyp) continue;
        ++hypotheses;
        nontrivial += ab.size() > 1;
        std::vector<std::uint32_t> bd_gens;
        for (auto x : b_set)
          for (auto y : b_set) bd_gens.push_back(comm(g, x, y));
        for (auto x : closure(g, bd_gens))
          for (auto a : a_set)
            if (!commute(g, x, a)) fail(r, "counterexample in a group of order " + std::to_string(n));
      }
    }
  if (nontrivial == 0) fail(r, "no sampled pair had a nontrivial commutator subgroup");
  if (r.ok)
    r.detail = std::to_string(hypotheses) + " pairs met the hypotheses, " + std::to_string(nontrivial) +
               " with nontrivial [A,B]";
  return r;
}

PropertyResult witness_soundness(const std::vector<nlohmann::json>& reports) {
  PropertyResult r{"witness soundness", true, {}};
  std::size_t count = 0;
  std::set<std::string> seen;
  for (const auto& rep : reports)
    for (const auto& item : rep.at("items"))
      for (const auto& w : item.at("witnesses")) {
        if (!seen.insert(w.dump()).second) continue;
        ++count;
        if (!replay_witness(w)) fail(r, "witness for " + item.at("id").get<std::string>() + " does not replay");
      }
  if (r.ok) r.detail = std::to_string(count) + " distinct witnesses replayed";
  return r;
}

std::vector<PropertyResult> catalog_suite() {
  return {lagrange(64), class_equation(64), fingerprint_soundness(64, 32), commutator_centralizer(24, 40)};
}

}  // namespace mge::props
