#include "mge/group.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "mge/error.hpp"

namespace mge {

Elem Group::pow(Elem x, long k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Elem result = identity();
  Elem base = x;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::optional<Elem> Group::binding(std::string_view name) const {
  for (const auto& [n, e] : bindings_)
    if (n == name) return e;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TableGroup

std::shared_ptr<TableGroup> TableGroup::from_mul(
    std::uint32_t n, const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul) {
  if (n == 0 || n > kMaxOrder) throw OrderLimitExceeded("dense table of order " + std::to_string(n));
  std::shared_ptr<TableGroup> g(new TableGroup());
  g->n_ = n;
  g->table_.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) g->table_[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(mul(a, b));
  g->fill_inverses();
  return g;
}

std::shared_ptr<TableGroup> TableGroup::from_raw(std::uint32_t n, std::vector<std::uint16_t> table) {
  std::shared_ptr<TableGroup> g(new TableGroup());
  g->n_ = n;
  g->table_ = std::move(table);
  g->fill_inverses();
  return g;
}

void TableGroup::fill_inverses() {
  inv_.assign(n_, 0);
  for (std::uint32_t a = 0; a < n_; ++a)
    for (std::uint32_t b = 0; b < n_; ++b)
      if (m(a, b) == 0) {
        inv_[a] = b;
        break;
      }
}

void TableGroup::corrupt_entry(std::uint32_t a, std::uint32_t b, std::uint32_t value) {
  table_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint16_t>(value);
}

namespace {
std::string perm_key(const Perm& p) {
  return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(std::uint16_t));
}
}  // namespace

std::shared_ptr<TableGroup> TableGroup::from_perms(std::size_t degree, const std::vector<Perm>& gens,
                                                   std::uint32_t limit) {
  std::vector<Perm> elems{perm_identity(degree)};
  std::unordered_map<std::string, std::uint32_t> index{{perm_key(elems[0]), 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& s : gens) {
      Perm y = perm_mul(elems[k], s);
      auto key = perm_key(y);
      if (index.count(key)) continue;
      if (elems.size() >= limit) throw OrderLimitExceeded("permutation group exceeds " + std::to_string(limit) + " elements");
      index.emplace(std::move(key), static_cast<std::uint32_t>(elems.size()));
      elems.push_back(std::move(y));
    }
  }
  auto n = static_cast<std::uint32_t>(elems.size());
  auto g = from_mul(n, [&](std::uint32_t a, std::uint32_t b) { return index.at(perm_key(perm_mul(elems[a], elems[b]))); });
  g->perm_degree_ = degree;
  g->perms_ = std::move(elems);
  g->perm_lookup_ = std::move(index);
  return g;
}

std::optional<std::uint32_t> TableGroup::perm_index(const Perm& p) const {
  auto it = perm_lookup_.find(perm_key(p));
  if (it == perm_lookup_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t TableGroup::power(std::uint32_t x, long k) const { return static_cast<std::uint32_t>(pow(x, k)); }

std::uint32_t TableGroup::element_order(std::uint32_t x) const {
  std::uint32_t k = 1;
  for (std::uint32_t y = x; y != 0; y = m(y, x)) ++k;
  return k;
}

std::optional<Elem> TableGroup::resolve(std::string_view symbol) const {
  if (auto b = binding(symbol)) return b;
  if (is_perm_group() && looks_like_cycles(symbol)) {
    try {
      if (max_point(symbol) <= perm_degree_) {
        if (auto idx = perm_index(parse_cycles(symbol, perm_degree_))) return *idx;
      }
    } catch (const ParseError&) {
    }
  }
  for (const auto& link : links_)
    if (auto e = link.source->resolve(symbol)) return link.map[*e];
  return std::nullopt;
}

std::string TableGroup::describe(Elem x) const {
  if (is_perm_group()) return format_cycles(perms_[x]);
  std::call_once(words_once_, [this] {
    words_.assign(n_, std::string());
    std::vector<std::vector<std::pair<std::size_t, long>>> runs(n_);
    std::vector<char> seen(n_, 0);
    seen[0] = 1;
    std::deque<std::uint32_t> queue{0};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (std::size_t gi = 0; gi < bindings_.size(); ++gi) {
        auto v = m(u, static_cast<std::uint32_t>(bindings_[gi].second));
        if (seen[v]) continue;
        seen[v] = 1;
        runs[v] = runs[u];
        if (!runs[v].empty() && runs[v].back().first == gi)
          ++runs[v].back().second;
        else
          runs[v].push_back({gi, 1});
        queue.push_back(v);
      }
    }
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (v == 0) {
        words_[v] = "1";
        continue;
      }
      if (!seen[v]) {
        words_[v] = "#" + std::to_string(v);
        continue;
      }
      std::string w;
      for (const auto& [gi, k] : runs[v]) {
        if (!w.empty()) w += "*";
        w += bindings_[gi].first;
        if (k != 1) w += "^" + std::to_string(k);
      }
      words_[v] = w;
    }
  });
  return words_[x];
}

const ElementProfile& TableGroup::profile() const {
  std::call_once(profile_once_, [this] {
    auto p = std::make_unique<ElementProfile>();
    const std::uint32_t n = n_;
    p->order.resize(n);
    p->centralizer.assign(n, 0);
    p->roots.assign(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      p->order[x] = element_order(x);
      p->roots[m(x, x)]++;
      std::uint32_t c = 0;
      for (std::uint32_t y = 0; y < n; ++y) c += m(x, y) == m(y, x);
      p->centralizer[x] = c;
    }
    // Iteratively refine classes by the classes of x^2 and x^3; ids are the
    // ranks of value keys, so they are invariant under isomorphism.
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>;
    std::vector<Key> keys(n);
    for (std::uint32_t x = 0; x < n; ++x) keys[x] = {p->order[x], p->centralizer[x], p->roots[x], 0};
    auto rank = [&](const std::vector<Key>& k) {
      std::vector<Key> sorted = k;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      std::vector<std::uint32_t> ids(n);
      for (std::uint32_t x = 0; x < n; ++x)
        ids[x] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), k[x]) - sorted.begin());
      return std::make_pair(ids, sorted.size());
    };
    auto [cls, count] = rank(keys);
    for (;;) {
      std::vector<Key> next(n);
      for (std::uint32_t x = 0; x < n; ++x) {
        auto sq = m(x, x);
        next[x] = {cls[x], cls[sq], cls[m(sq, x)], 0};
      }
      auto [ncls, ncount] = rank(next);
      cls = std::move(ncls);
      if (ncount == count) break;
      count = ncount;
    }
    p->power_class.resize(n);
    for (std::uint32_t x = 0; x < n; ++x) p->power_class[x] = cls[m(x, x)];
    p->cls = std::move(cls);
    profile_ = std::move(p);
  });
  return *profile_;
}

std::string TableGroup::table_hash() const {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::uint32_t n = n_;
  unsigned char header[4] = {static_cast<unsigned char>(n & 0xff), static_cast<unsigned char>((n >> 8) & 0xff),
                             static_cast<unsigned char>((n >> 16) & 0xff), static_cast<unsigned char>(n >> 24)};
  EVP_DigestUpdate(ctx, header, 4);
  std::vector<unsigned char> bytes(table_.size() * 2);
  for (std::size_t k = 0; k < table_.size(); ++k) {
    bytes[2 * k] = static_cast<unsigned char>(table_[k] & 0xff);
    bytes[2 * k + 1] = static_cast<unsigned char>(table_[k] >> 8);
  }
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

// ---------------------------------------------------------------------------
// TwistedGroup

TwistedGroup::TwistedGroup(std::vector<Component> components, std::vector<std::uint32_t> span_basis)
    : components_(std::move(components)), span_basis_(std::move(span_basis)) {
  unsigned off = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::uint32_t n = components_[i].group->size();
    unsigned width = 1;
    while ((1ull << width) < n) ++width;
    offset_.push_back(off);
    mask_.push_back((Elem{1} << width) - 1);
    off += width;
    if (!components_[i].twist.empty()) {
      bit_of_.push_back(static_cast<int>(bit_component_.size()));
      bit_component_.push_back(i);
    } else {
      bit_of_.push_back(-1);
    }
  }
  dshift_ = off;
  if (dshift_ + bit_component_.size() > 64) throw OrderLimitExceeded("structured element does not fit in 64 bits");
  const std::uint32_t full = 1u << bit_component_.size();
  in_span_.assign(full, 0);
  in_span_[0] = 1;
  span_.push_back(0);
  for (auto b : span_basis_) {
    if (b >= full) throw ParseError("span word uses an unknown involution");
    std::size_t cur = span_.size();
    if (in_span_[b]) continue;
    for (std::size_t k = 0; k < cur; ++k) {
      std::uint32_t v = span_[k] ^ b;
      if (!in_span_[v]) {
        in_span_[v] = 1;
        span_.push_back(v);
      }
    }
  }
  std::sort(span_.begin(), span_.end());
  order_ = base_order() * span_.size();
}

std::uint64_t TwistedGroup::base_order() const {
  std::uint64_t o = 1;
  for (const auto& c : components_) o *= c.group->size();
  return o;
}

Elem TwistedGroup::mul(Elem x, Elem y) const {
  const std::uint32_t d1 = dbits(x);
  Elem out = static_cast<Elem>(d1 ^ dbits(y)) << dshift_;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::uint32_t b2 = coord(y, i);
    if (bit_of_[i] >= 0 && ((d1 >> bit_of_[i]) & 1u)) b2 = components_[i].twist[b2];
    out |= static_cast<Elem>(components_[i].group->m(coord(x, i), b2)) << offset_[i];
  }
  return out;
}

Elem TwistedGroup::inv(Elem x) const {
  const std::uint32_t d = dbits(x);
  Elem out = static_cast<Elem>(d) << dshift_;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::uint32_t b = components_[i].group->i(coord(x, i));
    if (bit_of_[i] >= 0 && ((d >> bit_of_[i]) & 1u)) b = components_[i].twist[b];
    out |= static_cast<Elem>(b) << offset_[i];
  }
  return out;
}

bool TwistedGroup::contains(Elem x) const {
  std::uint32_t d = dbits(x);
  if (d >= in_span_.size() || !in_span_[d]) return false;
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (coord(x, i) >= components_[i].group->size()) return false;
  return true;
}

Elem TwistedGroup::pack(const std::vector<std::uint32_t>& coords, std::uint32_t d) const {
  Elem out = static_cast<Elem>(d) << dshift_;
  for (std::size_t i = 0; i < components_.size(); ++i) out |= static_cast<Elem>(coords[i]) << offset_[i];
  return out;
}

std::optional<Elem> TwistedGroup::resolve(std::string_view symbol) const {
  if (auto b = binding(symbol)) return b;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].twist_name == symbol) return twist_element(1u << bit_of_[i]);
  }
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (auto e = components_[i].group->resolve(symbol)) return embed(i, static_cast<std::uint32_t>(*e));
  if (looks_like_cycles(symbol)) {
    // An odd permutation pi = b * tau with b in the component and tau the
    // component's twisting transposition.
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      if (!c.twist_perm || !c.group->is_perm_group()) continue;
      try {
        std::size_t deg = c.group->perm_degree();
        if (max_point(symbol) > deg) continue;
        Perm pi = parse_cycles(symbol, deg);
        if (auto idx = c.group->perm_index(perm_mul(pi, *c.twist_perm)))
          return embed(i, *idx) | twist_element(1u << bit_of_[i]);
      } catch (const ParseError&) {
      }
    }
  }
  return std::nullopt;
}

std::string TwistedGroup::describe(Elem x) const {
  // Component words use local names; bound names may carry a factor suffix.
  std::call_once(rename_once_, [this] {
    rename_.resize(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i)
      for (const auto& [local, e] : components_[i].group->bindings())
        for (const auto& [name, g] : bindings_)
          if (g == embed(i, static_cast<std::uint32_t>(e)) && (name == local || name.rfind(local + "_", 0) == 0)) {
            if (name != local) rename_[i][local] = name;
            break;
          }
  });
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    std::uint32_t b = coord(x, i);
    if (b == 0) continue;
    if (!out.empty()) out += "*";
    const std::string w = components_[i].group->describe(b);
    if (rename_[i].empty()) {
      out += w;
      continue;
    }
    for (std::size_t p = 0; p < w.size();) {
      if (!std::isalpha(static_cast<unsigned char>(w[p])) && w[p] != '_') {
        out += w[p++];
        continue;
      }
      std::size_t q = p;
      while (q < w.size() && is_ident(w[q])) ++q;
      std::string token = w.substr(p, q - p);
      auto it = rename_[i].find(token);
      out += it == rename_[i].end() ? token : it->second;
      p = q;
    }
  }
  std::uint32_t d = dbits(x);
  for (std::size_t j = 0; j < bit_component_.size(); ++j) {
    if (!((d >> j) & 1u)) continue;
    if (!out.empty()) out += "*";
    out += components_[bit_component_[j]].twist_name;
  }
  return out.empty() ? "1" : out;
}

std::uint64_t TwistedGroup::exponent() const {
  auto lcm = [](std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; };
  std::uint64_t result = 1;
  for (const auto& c : components_)
    for (std::uint32_t b = 0; b < c.group->size(); ++b) result = lcm(result, c.group->element_order(b));
  for (auto d : span_) {
    if (d == 0) continue;
    std::uint64_t sq = 1;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      const bool acts = bit_of_[i] >= 0 && ((d >> bit_of_[i]) & 1u);
      for (std::uint32_t b = 0; b < c.group->size(); ++b) {
        std::uint32_t s = c.group->m(b, acts ? c.twist[b] : b);
        sq = lcm(sq, c.group->element_order(s));
      }
    }
    result = lcm(result, 2 * sq);
  }
  return result;
}

std::uint64_t TwistedGroup::support_size(const std::vector<std::size_t>& support) const {
  std::uint64_t s = span_.size();
  for (auto i : support) s *= components_[i].group->size();
  return s;
}

void TwistedGroup::for_each_in_support(const std::vector<std::size_t>& support,
                                       const std::function<void(Elem)>& fn) const {
  std::vector<std::uint32_t> digits(support.size(), 0);
  for (;;) {
    Elem base = 0;
    for (std::size_t k = 0; k < support.size(); ++k) base |= embed(support[k], digits[k]);
    for (auto d : span_) fn(base | twist_element(d));
    std::size_t k = 0;
    while (k < support.size()) {
      if (++digits[k] < components_[support[k]].group->size()) break;
      digits[k] = 0;
      ++k;
    }
    if (k == support.size()) break;
  }
}

// ---------------------------------------------------------------------------
// Word evaluation

namespace {

bool split_symbol(const Group& g, std::string_view text, std::vector<Elem>& out) {
  if (text.empty()) return true;
  for (std::size_t len = text.size(); len >= 1; --len) {
    if (auto e = g.resolve(text.substr(0, len))) {
      out.push_back(*e);
      if (split_symbol(g, text.substr(len), out)) return true;
      out.pop_back();
    }
  }
  return false;
}

Elem eval_factors(const Group& g, const std::vector<WordFactor>& factors, const std::string& source) {
  Elem acc = g.identity();
  for (const auto& f : factors) {
    Elem value = g.identity();
    if (f.kind == WordFactor::Kind::Sub) {
      value = eval_factors(g, f.sub, source);
    } else if (auto e = g.resolve(f.text)) {
      value = *e;
    } else {
      std::vector<Elem> parts;
      if (f.kind != WordFactor::Kind::Symbol || !split_symbol(g, f.text, parts))
        throw UnknownGenerator("\"" + f.text + "\" in word \"" + source + "\"");
      // The exponent binds to the last name only: "a1c^3" is a1 * c^3.
      for (std::size_t k = 0; k + 1 < parts.size(); ++k) acc = g.mul(acc, parts[k]);
      value = parts.back();
    }
    acc = g.mul(acc, g.pow(value, f.exponent));
  }
  return acc;
}

}  // namespace

Elem eval_word(const Group& g, const Word& w) { return eval_factors(g, w.factors, w.source); }

Elem eval_word(const Group& g, std::string_view text) { return eval_word(g, parse_word(text)); }

}  // namespace mge
