#pragma once

// Brute-force reference computations on dense tables. They share no code with
// the engine beyond TableGroup::m and TableGroup::i.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "mge/group.hpp"

namespace mge::oracle {

inline std::vector<std::uint32_t> closure(const TableGroup& g, const std::vector<std::uint32_t>& gens) {
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
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint32_t order_of(const TableGroup& g, std::uint32_t x) {
  std::uint32_t k = 1;
  for (auto y = x; y != 0; y = g.m(y, x)) ++k;
  return k;
}

inline std::vector<std::uint32_t> center(const TableGroup& g) {
  std::vector<std::uint32_t> z;
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    bool central = true;
    for (std::uint32_t y = 0; y < g.size() && central; ++y) central = g.m(x, y) == g.m(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

inline std::vector<std::uint32_t> derived(const TableGroup& g) {
  std::vector<std::uint32_t> comms;
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = 0; b < g.size(); ++b) comms.push_back(g.m(g.m(g.i(a), g.i(b)), g.m(a, b)));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(g, comms);
}

// Multiset of element orders as (order -> count).
inline std::map<std::uint32_t, std::uint32_t> order_counts(const TableGroup& g) {
  std::map<std::uint32_t, std::uint32_t> c;
  for (std::uint32_t x = 0; x < g.size(); ++x) ++c[order_of(g, x)];
  return c;
}

inline bool associative(const TableGroup& g) {
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = 0; b < g.size(); ++b)
      for (std::uint32_t c = 0; c < g.size(); ++c)
        if (g.m(g.m(a, b), c) != g.m(a, g.m(b, c))) return false;
  return true;
}

inline bool is_abelian(const TableGroup& g) { return center(g).size() == g.size(); }

}  // namespace mge::oracle
