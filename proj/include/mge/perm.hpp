#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mge {

// Zero-based image array. Products compose left to right: (p * q)(i) = q(p(i)).
using Perm = std::vector<std::uint16_t>;

Perm perm_identity(std::size_t degree);
Perm perm_mul(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
bool perm_is_identity(const Perm& p);
bool perm_is_even(const Perm& p);

// True when the text is one or more cycles such as "(12)(34)" or "(1,10,3)".
bool looks_like_cycles(std::string_view text);

// Parses cycle notation, multiplying successive cycles left to right. Points
// are 1-based; single digits may be juxtaposed, larger points need commas.
// Throws ParseError on malformed text or points above the degree.
Perm parse_cycles(std::string_view text, std::size_t degree);

// Largest point mentioned in a cycle string (0 for the identity "()").
std::size_t max_point(std::string_view text);

// Canonical cycle string; "()" for the identity.
std::string format_cycles(const Perm& p);

}  // namespace mge
