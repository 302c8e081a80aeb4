#include "mge/enumerator.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mge/catalog.hpp"
#include "mge/construct.hpp"
#include "mge/error.hpp"
#include "mge/ops.hpp"
#include "mge/parallel.hpp"

namespace mge {

namespace {

using Map = std::vector<std::uint32_t>;

std::string key_of(const std::vector<std::uint32_t>& v) {
  return {reinterpret_cast<const char*>(v.data()), v.size() * sizeof(std::uint32_t)};
}

// Smallest representative of the coset alpha * Inn(N), evaluated on the
// generators: min over n of (n alpha(g) n^-1)_g.
std::vector<std::uint32_t> coset_key(const TableGroup& N, const std::vector<std::uint32_t>& transversal,
                                     const std::vector<std::uint32_t>& gen_images) {
  std::vector<std::uint32_t> best, cur(gen_images.size());
  for (auto n : transversal) {
    const auto ni = N.i(n);
    for (std::size_t k = 0; k < gen_images.size(); ++k) cur[k] = N.m(N.m(n, gen_images[k]), ni);
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

}  // namespace

ExtensionProblem extension_problem(const TablePtr& base, std::uint32_t p) {
  const TableGroup& N = *base;
  const std::uint32_t m = N.size();
  const auto gens = generating_sequence(N);
  const auto& prof = N.profile();

  // Conjugation actions on the generators, keyed to their first source.
  std::unordered_map<std::string, std::uint32_t> inner;
  std::vector<std::uint32_t> transversal;  // one element per coset of Z(N)
  std::vector<std::uint32_t> center;
  for (std::uint32_t a = 0; a < m; ++a) {
    std::vector<std::uint32_t> act(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) act[k] = N.m(N.m(a, gens[k]), N.i(a));
    if (inner.emplace(key_of(act), a).second) transversal.push_back(a);
    if (prof.centralizer[a] == m) center.push_back(a);
  }

  auto gen_images = [&](const Map& alpha) {
    std::vector<std::uint32_t> v(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) v[k] = alpha[gens[k]];
    return v;
  };
  auto power_on_gens = [&](const Map& alpha, std::uint32_t e) {
    std::vector<std::uint32_t> v(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::uint32_t x = gens[k];
      for (std::uint32_t r = 0; r < e; ++r) x = alpha[x];
      v[k] = x;
    }
    return v;
  };

  // Stream Aut(N): keep one automorphism per coset of Inn(N) whose p-th
  // power is inner, and a deterministic sample to act by conjugation.
  std::unordered_map<std::string, std::size_t> coset_index;
  std::vector<Map> cosets;
  std::vector<Map> sample;
  std::mt19937_64 rng(0x6d6765);
  std::uint64_t seen = 0;
  constexpr std::size_t kSample = 24;
  for_each_automorphism(base, [&](const Map& alpha) {
    ++seen;
    if (sample.size() < kSample) {
      sample.push_back(alpha);
    } else {
      std::uniform_int_distribution<std::uint64_t> pick(0, seen - 1);
      auto slot = pick(rng);
      if (slot < kSample) sample[slot] = alpha;
    }
    if (!inner.count(key_of(power_on_gens(alpha, p)))) return true;
    auto key = key_of(coset_key(N, transversal, gen_images(alpha)));
    if (coset_index.emplace(key, cosets.size()).second) cosets.push_back(alpha);
    return true;
  });

  std::vector<Map> sample_inv;
  for (const auto& b : sample) {
    Map inv(m);
    for (std::uint32_t x = 0; x < m; ++x) inv[b[x]] = x;
    sample_inv.push_back(std::move(inv));
  }

  // Orbits of the coset set under conjugation by the sample and under
  // alpha -> alpha^k; the sample may generate a proper subgroup of Aut(N),
  // which only leaves orbits finer than necessary.
  std::vector<char> done(cosets.size(), 0);
  std::vector<std::size_t> reps;
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    if (done[c]) continue;
    reps.push_back(c);
    done[c] = 1;
    std::vector<std::size_t> queue{c};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Map& alpha = cosets[queue[q]];
      std::vector<std::vector<std::uint32_t>> moves;
      for (std::size_t s = 0; s < sample.size(); ++s) {
        std::vector<std::uint32_t> v(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) v[k] = sample[s][alpha[sample_inv[s][gens[k]]]];
        moves.push_back(std::move(v));
      }
      for (std::uint32_t e = 2; e < p; ++e) moves.push_back(power_on_gens(alpha, e));
      for (const auto& v : moves) {
        auto it = coset_index.find(key_of(coset_key(N, transversal, v)));
        if (it == coset_index.end() || done[it->second]) continue;
        done[it->second] = 1;
        queue.push_back(it->second);
      }
    }
  }

  ExtensionProblem out{base, p, {}};
  for (auto r : reps) {
    const Map& alpha = cosets[r];
    const auto a0 = inner.at(key_of(power_on_gens(alpha, p)));
    // a ranges over a0 Z(N) fixed by alpha, modulo the norm image of Z(N).
    std::set<std::uint32_t> norms;
    for (auto z : center) {
      std::uint32_t prod = 0, y = z;
      for (std::uint32_t i = 0; i < p; ++i) {
        prod = N.m(prod, y);
        y = alpha[y];
      }
      norms.insert(prod);
    }
    std::vector<std::uint32_t> cand;
    for (auto z : center) {
      auto a = N.m(a0, z);
      if (alpha[a] == a) cand.push_back(a);
    }
    std::sort(cand.begin(), cand.end());
    std::set<std::uint32_t> covered;
    for (auto a : cand) {
      if (covered.count(a)) continue;
      for (auto t : norms) covered.insert(N.m(a, t));
      out.pairs.emplace_back(alpha, a);
    }
  }
  return out;
}

TablePtr extension_group(const TablePtr& base, std::uint32_t p, const std::vector<std::uint32_t>& alpha, std::uint32_t a) {
  const TableGroup& N = *base;
  const std::uint32_t m = N.size();
  std::vector<Map> powers{Map(m)};
  for (std::uint32_t x = 0; x < m; ++x) powers[0][x] = x;
  for (std::uint32_t i = 1; i < p; ++i) {
    Map next(m);
    for (std::uint32_t x = 0; x < m; ++x) next[x] = alpha[powers.back()[x]];
    powers.push_back(std::move(next));
  }
  auto g = TableGroup::from_mul(m * p, [&](std::uint32_t x, std::uint32_t y) {
    std::uint32_t n1 = x % m, i = x / m, n2 = y % m, j = y / m;
    std::uint32_t prod = N.m(n1, powers[i][n2]);
    std::uint32_t k = i + j;
    if (k >= p) {
      prod = N.m(prod, a);
      k -= p;
    }
    return prod + m * k;
  });
  std::vector<std::pair<std::string, Elem>> bindings;
  for (const auto& [name, e] : N.bindings()) bindings.emplace_back(name, e);
  bindings.emplace_back("t", m);
  g->set_bindings(std::move(bindings));
  return g;
}

std::vector<TablePtr> dedupe_groups(const std::vector<TablePtr>& groups) {
  std::vector<std::string> fps(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) { fps[i] = fingerprint(*groups[i]).canonical(); });
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < groups.size(); ++i) buckets[fps[i]].push_back(i);
  std::vector<std::vector<std::size_t>> bucket_list;
  for (auto& [fp, members] : buckets) bucket_list.push_back(std::move(members));
  std::vector<std::vector<std::size_t>> kept(bucket_list.size());
  parallel_for(bucket_list.size(), [&](std::size_t b) {
    for (auto i : bucket_list[b]) {
      bool fresh = true;
      for (auto r : kept[b])
        if (find_isomorphism(groups[i], groups[r])) {
          fresh = false;
          break;
        }
      if (fresh) kept[b].push_back(i);
    }
  });
  std::vector<std::size_t> all;
  for (const auto& k : kept) all.insert(all.end(), k.begin(), k.end());
  std::sort(all.begin(), all.end());
  std::vector<TablePtr> out;
  for (auto i : all) out.push_back(groups[i]);
  return out;
}

std::vector<TablePtr> cyclic_extensions(const TablePtr& base, std::uint32_t p) {
  auto problem = extension_problem(base, p);
  std::vector<TablePtr> groups;
  for (const auto& [alpha, a] : problem.pairs) groups.push_back(extension_group(base, p, alpha, a));
  return dedupe_groups(groups);
}

std::string regular_recipe(const TableGroup& g) {
  const auto n = g.size();
  if (n == 1) return "C(1)";
  std::string out = "perm(" + std::to_string(n) + ";";
  bool first = true;
  for (auto s : generating_sequence(g)) {
    Perm p(n);
    for (std::uint32_t x = 0; x < n; ++x) p[x] = static_cast<std::uint16_t>(g.m(x, s));
    out += (first ? " \"" : ", \"") + format_cycles(p) + "\"";
    first = false;
  }
  return out + ")";
}

nlohmann::json Catalog::to_json() const {
  nlohmann::json j;
  j["order"] = order;
  j["engine_version"] = kEngineVersion;
  j["method"] = method;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["entries"].push_back({{"recipe", e.recipe}, {"fingerprint", e.fingerprint}, {"table_hash", e.table_hash}});
  return j;
}

EnumerationConfig enumeration_config_from_env() {
  EnumerationConfig c;
  if (const char* t = std::getenv("MGE_TIER")) {
    int v = std::atoi(t);
    if (v >= 1 && v <= 3) c.tier = v;
  }
  if (const char* d = std::getenv("MGE_CACHE_DIR")) c.cache_dir = d;
  return c;
}

bool order_in_tier(std::uint32_t n, int tier) {
  if (n >= 1 && n <= 64) return true;
  if (tier >= 2 && (n == 72 || n == 96 || n == 120 || n == 144)) return true;
  if (tier >= 3 && (n == 81 || n == 243)) return true;
  return false;
}

namespace {

CatalogEntry make_entry(const TableGroup& g) {
  CatalogEntry e;
  e.recipe = regular_recipe(g);
  e.group = construct_table(e.recipe);
  e.fingerprint = fingerprint(*e.group).canonical();
  e.table_hash = e.group->table_hash();
  return e;
}

void sort_entries(std::vector<CatalogEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::tie(a.fingerprint, a.recipe) < std::tie(b.fingerprint, b.recipe);
  });
}

std::filesystem::path cache_path(const std::string& dir, std::uint32_t n) {
  return std::filesystem::path(dir) / ("catalog-" + std::to_string(n) + "-" + kEngineVersion + ".json");
}

std::unique_ptr<Catalog> load_cached(const std::string& dir, std::uint32_t n) {
  if (dir.empty()) return nullptr;
  std::ifstream in(cache_path(dir, n));
  if (!in) return nullptr;
  try {
    auto j = nlohmann::json::parse(in);
    if (j.at("order").get<std::uint32_t>() != n || j.at("engine_version").get<std::string>() != kEngineVersion)
      return nullptr;
    auto c = std::make_unique<Catalog>();
    c->order = n;
    c->method = j.at("method").get<std::string>();
    const auto& items = j.at("entries");
    c->entries.resize(items.size());
    bool ok = true;
    parallel_for(items.size(), [&](std::size_t i) {
      auto& e = c->entries[i];
      e.recipe = items[i].at("recipe").get<std::string>();
      e.fingerprint = items[i].at("fingerprint").get<std::string>();
      e.table_hash = items[i].at("table_hash").get<std::string>();
      e.group = construct_table(e.recipe);
      if (e.group->size() != n || e.group->table_hash() != e.table_hash) ok = false;
    });
    if (!ok) return nullptr;
    return c;
  } catch (const std::exception&) {
    return nullptr;
  }
}

void store_cached(const std::string& dir, const Catalog& c) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto path = cache_path(dir, c.order);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << c.to_json().dump(1) << "\n";
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::uint32_t, std::unique_ptr<Catalog>>& memo() {
  static std::map<std::uint32_t, std::unique_ptr<Catalog>> m;
  return m;
}

std::vector<TablePtr> seeds_of_order(std::uint32_t n) {
  std::vector<TablePtr> out;
  for (const auto& s : perfect_seeds()) {
    if (s.order != n) continue;
    auto g = construct_table(make_named(s.label));
    if (g->size() != s.order || derived_subgroup(g).order() != g->size() || center(g).order() != s.center_order)
      throw IncompleteSeedSet("seed \"" + s.label + "\" failed its load-time check");
    out.push_back(g);
  }
  return out;
}

void check_seed_coverage(std::uint32_t n) {
  // Perfect groups are insoluble: their orders have at least three prime
  // factors and are divisible by 4. The seed list covers orders up to 256.
  for (std::uint64_t d = 257; d <= n; ++d) {
    if (n % d || d % 4 || prime_factors(d).size() < 3) continue;
    throw IncompleteSeedSet("order " + std::to_string(n) + " has divisor " + std::to_string(d) +
                            " beyond the perfect seed list");
  }
}

}  // namespace

const Catalog& enumerate_groups(std::uint32_t n, const EnumerationConfig& config) {
  {
    std::lock_guard lock(memo_mutex());
    auto it = memo().find(n);
    if (it != memo().end()) return *it->second;
  }
  if (n == 0) throw OutOfRange("order must be positive");
  if (n > config.hard_limit || !order_in_tier(n, config.tier))
    throw TierLimitExceeded("order " + std::to_string(n) + " is outside tier " + std::to_string(config.tier));
  check_seed_coverage(n);

  std::unique_ptr<Catalog> result = load_cached(config.cache_dir, n);
  if (!result) {
    std::vector<TablePtr> candidates;
    if (n == 1) {
      candidates.push_back(construct_table("C(1)"));
    } else {
      std::vector<std::pair<TablePtr, std::uint32_t>> problems;
      for (auto p : prime_factors(n)) {
        const auto& sub = enumerate_groups(n / p, config);
        for (const auto& e : sub.entries) problems.emplace_back(e.group, p);
      }
      std::vector<std::vector<TablePtr>> found(problems.size());
      parallel_for(problems.size(),
                   [&](std::size_t i) { found[i] = cyclic_extensions(problems[i].first, problems[i].second); });
      for (auto& f : found) candidates.insert(candidates.end(), f.begin(), f.end());
      for (auto& s : seeds_of_order(n)) candidates.push_back(s);
    }
    auto reps = dedupe_groups(candidates);
    result = std::make_unique<Catalog>();
    result->order = n;
    result->method = "cyclic-extension";
    result->entries.resize(reps.size());
    parallel_for(reps.size(), [&](std::size_t i) { result->entries[i] = make_entry(*reps[i]); });
    sort_entries(result->entries);
    store_cached(config.cache_dir, *result);
  }
  std::lock_guard lock(memo_mutex());
  return *memo().emplace(n, std::move(result)).first->second;
}

const Catalog& enumerate_groups(std::uint32_t n) { return enumerate_groups(n, enumeration_config_from_env()); }

namespace {

using SmallPerm = std::vector<std::uint8_t>;

// Permutations of {0..n-1} whose cycles all have the same length > 1.
void semiregular(std::uint32_t n, std::uint32_t len, SmallPerm& cur, std::vector<char>& used,
                 std::vector<SmallPerm>& out) {
  std::uint32_t start = 0;
  while (start < n && used[start]) ++start;
  if (start == n) {
    out.push_back(cur);
    return;
  }
  std::vector<std::uint32_t> cycle{start};
  used[start] = 1;
  // Extend the cycle through unused points in every order.
  std::function<void()> extend = [&] {
    if (cycle.size() == len) {
      for (std::size_t k = 0; k < len; ++k) cur[cycle[k]] = static_cast<std::uint8_t>(cycle[(k + 1) % len]);
      semiregular(n, len, cur, used, out);
      return;
    }
    for (std::uint32_t q = start + 1; q < n; ++q) {
      if (used[q]) continue;
      used[q] = 1;
      cycle.push_back(q);
      extend();
      cycle.pop_back();
      used[q] = 0;
    }
  };
  extend();
  used[start] = 0;
}

// Closure of perms, abandoned once it exceeds n elements or a non-identity
// element fixes a point.
std::optional<std::vector<SmallPerm>> semiregular_closure(const std::vector<SmallPerm>& gens, std::uint32_t n) {
  SmallPerm id(n);
  for (std::uint32_t x = 0; x < n; ++x) id[x] = static_cast<std::uint8_t>(x);
  std::vector<SmallPerm> elems{id};
  std::set<SmallPerm> seen{id};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& s : gens) {
      SmallPerm y(n);
      for (std::uint32_t x = 0; x < n; ++x) y[x] = s[elems[k][x]];
      if (!seen.insert(y).second) continue;
      for (std::uint32_t x = 0; x < n; ++x)
        if (y[x] == x) return std::nullopt;
      elems.push_back(y);
      if (elems.size() > n) return std::nullopt;
    }
  return elems;
}

std::string cycles_text(const SmallPerm& p) {
  Perm q(p.begin(), p.end());
  return format_cycles(q);
}

}  // namespace

Catalog regular_oracle(std::uint32_t n) {
  if (n < 1 || n > 10) throw OutOfRange("the regular oracle covers orders 1 to 10");
  Catalog c;
  c.order = n;
  c.method = "oracle";
  std::vector<TablePtr> groups;
  if (n == 1) {
    groups.push_back(construct_table("C(1)"));
  } else {
    std::vector<SmallPerm> pool;
    std::vector<std::uint32_t> pool_len;
    for (std::uint32_t len = 2; len <= n; ++len) {
      if (n % len) continue;
      SmallPerm cur(n, 0);
      std::vector<char> used(n, 0);
      auto before = pool.size();
      semiregular(n, len, cur, used, pool);
      pool_len.resize(pool.size(), len);
      (void)before;
    }
    std::set<std::vector<SmallPerm>> found;
    auto record = [&](const std::vector<SmallPerm>& gens) {
      std::vector<std::string> words;
      for (const auto& g : gens) words.push_back(cycles_text(g));
      std::string recipe = "perm(" + std::to_string(n) + ";";
      for (std::size_t k = 0; k < words.size(); ++k) recipe += (k ? ", \"" : " \"") + words[k] + "\"";
      recipe += ")";
      groups.push_back(construct_table(recipe));
    };
    // A regular group contains a semiregular element of its largest order d,
    // and every such element is conjugate in S_n to the product of
    // consecutive d-cycles, so the first generator can be fixed.
    for (std::uint32_t d = 2; d <= n; ++d) {
      if (n % d) continue;
      SmallPerm g1(n);
      for (std::uint32_t x = 0; x < n; ++x) g1[x] = static_cast<std::uint8_t>((x / d) * d + (x % d + 1) % d);
      auto c1 = semiregular_closure({g1}, n);
      if (c1 && c1->size() == n) {
        std::vector<SmallPerm> key = *c1;
        std::sort(key.begin(), key.end());
        if (found.insert(key).second) record({g1});
        continue;
      }
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool_len[i] > d) continue;
        auto c2 = semiregular_closure({g1, pool[i]}, n);
        if (!c2) continue;
        if (c2->size() == n) {
          std::vector<SmallPerm> key = *c2;
          std::sort(key.begin(), key.end());
          if (found.insert(key).second) record({g1, pool[i]});
          continue;
        }
        if (n % c2->size() || c2->size() == d) continue;
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
          if (pool_len[j] > d) continue;
          auto c3 = semiregular_closure({g1, pool[i], pool[j]}, n);
          if (!c3 || c3->size() != n) continue;
          std::vector<SmallPerm> key = *c3;
          std::sort(key.begin(), key.end());
          if (found.insert(key).second) record({g1, pool[i], pool[j]});
        }
      }
    }
  }
  for (const auto& g : dedupe_groups(groups)) {
    CatalogEntry e;
    e.group = g;
    e.recipe = g->expr().to_string();
    e.fingerprint = fingerprint(*g).canonical();
    e.table_hash = g->table_hash();
    c.entries.push_back(std::move(e));
  }
  sort_entries(c.entries);
  return c;
}

}  // namespace mge
