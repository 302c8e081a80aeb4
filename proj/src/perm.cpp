#include "mge/perm.hpp"

#include <cctype>

#include "mge/error.hpp"

namespace mge {

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
  return p;
}

Perm perm_mul(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint16_t>(i);
  return r;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool perm_is_even(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

bool looks_like_cycles(std::string_view text) {
  if (text.empty() || text.front() != '(') return false;
  for (char c : text)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == ' '))
      return false;
  return true;
}

namespace {

std::vector<std::vector<std::size_t>> split_cycles(std::string_view text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError("expected '(' in cycle string \"" + std::string(text) + "\"");
    auto close = text.find(')', i);
    if (close == std::string_view::npos)
      throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<std::size_t> cycle;
    if (body.find(',') != std::string_view::npos) {
      std::size_t start = 0;
      while (start <= body.size()) {
        auto comma = body.find(',', start);
        auto piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::size_t value = 0;
        bool any = false;
        for (char c : piece) {
          if (c == ' ') continue;
          if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad point in cycle");
          value = value * 10 + static_cast<std::size_t>(c - '0');
          any = true;
        }
        if (!any) throw ParseError("empty point in cycle");
        cycle.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else {
      for (char c : body) {
        if (c == ' ') continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad point in cycle");
        cycle.push_back(static_cast<std::size_t>(c - '0'));
      }
    }
    cycles.push_back(std::move(cycle));
    i = close + 1;
  }
  return cycles;
}

}  // namespace

std::size_t max_point(std::string_view text) {
  std::size_t m = 0;
  for (const auto& c : split_cycles(text))
    for (auto x : c) m = std::max(m, x);
  return m;
}

Perm parse_cycles(std::string_view text, std::size_t degree) {
  Perm result = perm_identity(degree);
  for (const auto& cycle : split_cycles(text)) {
    if (cycle.empty()) continue;
    Perm c = perm_identity(degree);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      std::size_t from = cycle[k], to = cycle[(k + 1) % cycle.size()];
      if (from == 0 || from > degree) throw ParseError("point " + std::to_string(from) + " outside degree " + std::to_string(degree));
      c[from - 1] = static_cast<std::uint16_t>(to - 1);
    }
    // A repeated point inside one cycle leaves c non-bijective.
    std::vector<char> hit(degree, 0);
    for (auto v : c) {
      if (hit[v]) throw ParseError("repeated point in cycle \"" + std::string(text) + "\"");
      hit[v] = 1;
    }
    result = perm_mul(result, c);
  }
  return result;
}

std::string format_cycles(const Perm& p) {
  const bool commas = p.size() > 9;
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      if (commas && !first) out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace mge
