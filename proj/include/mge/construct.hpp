#pragma once

#include <cstdint>

#include "mge/expr.hpp"
#include "mge/group.hpp"

namespace mge {

struct EngineConfig {
  std::uint32_t table_limit = 20000;         // largest dense table
  std::uint32_t dense_product_limit = 4096;  // larger direct products stay structured
  std::uint64_t subgroup_limit = 50000;      // closure cap
};

const EngineConfig& engine_config();
void set_engine_config(const EngineConfig& config);

inline constexpr const char* kEngineVersion = "mge-1.0.0";

// Realizes an expression. Dense kinds above the table limit throw
// OrderLimitExceeded; large direct products and tw(...) give TwistedGroup.
GroupPtr construct(const GroupExpr& expr);
GroupPtr construct(std::string_view text);

// As construct, but requires a dense result.
TablePtr construct_table(const GroupExpr& expr);
TablePtr construct_table(std::string_view text);

// Order known before realizing the expression itself (subexpressions of
// central products and quotients are realized to read off |<u>| and |N|).
std::uint64_t predicted_order(const GroupExpr& expr);

}  // namespace mge
