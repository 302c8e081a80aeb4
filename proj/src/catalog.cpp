#include "mge/catalog.hpp"

#include <json.hpp>

#include <algorithm>

#include "mge/error.hpp"
#include "mge/ops.hpp"

namespace mge {

namespace detail {
extern const char* const kRegistryJson;
}

namespace {

struct RegistryData {
  std::vector<NamedConstruction> constructions;
  std::vector<std::vector<std::string>> table1;  // index n - 1
  std::vector<ExpectedMinimal> table2, table4, table5, large;
  std::vector<PerfectSeed> seeds;
};

std::vector<ExpectedMinimal> read_rows(const nlohmann::json& rows) {
  std::vector<ExpectedMinimal> out;
  for (const auto& r : rows)
    out.push_back({r.at("n").get<std::uint32_t>(), r.at("order").get<std::uint64_t>(),
                   r.at("labels").get<std::vector<std::string>>()});
  return out;
}

const RegistryData& data() {
  static const RegistryData d = [] {
    RegistryData d;
    auto j = nlohmann::json::parse(detail::kRegistryJson);
    for (const auto& c : j.at("constructions")) {
      NamedConstruction nc;
      nc.label = c.at("label").get<std::string>();
      nc.recipe = c.at("recipe").get<std::string>();
      nc.order = c.at("order").get<std::uint64_t>();
      nc.anchor = c.at("anchor").get<std::string>();
      if (c.contains("parameters")) nc.parameters = c.at("parameters").get<std::vector<std::string>>();
      d.constructions.push_back(std::move(nc));
    }
    for (const auto& r : j.at("groups_of_order")) d.table1.push_back(r.at("labels").get<std::vector<std::string>>());
    d.table2 = read_rows(j.at("least_order_of"));
    d.table4 = read_rows(j.at("least_order_upto"));
    d.table5 = read_rows(j.at("examples_upto"));
    d.large = read_rows(j.at("large_examples_upto"));
    for (const auto& s : j.at("perfect_seeds"))
      d.seeds.push_back({s.at("label").get<std::string>(), s.at("order").get<std::uint64_t>(),
                         s.at("center_order").get<std::uint64_t>()});
    return d;
  }();
  return d;
}

std::uint64_t ipow(std::uint64_t p, std::uint64_t k) {
  std::uint64_t r = 1;
  while (k--) r *= p;
  return r;
}

}  // namespace

const std::vector<NamedConstruction>& registry() { return data().constructions; }

const NamedConstruction& named_construction(std::string_view label) {
  auto base = label.substr(0, label.find(':'));
  for (const auto& c : registry())
    if (c.label == base) return c;
  throw UnknownLabel("unknown group label \"" + std::string(label) + "\"");
}

std::string named_recipe(std::string_view label) {
  const auto& c = named_construction(label);
  auto colon = label.find(':');
  std::string param = colon == std::string_view::npos ? "" : std::string(label.substr(colon + 1));
  std::string recipe = c.recipe;
  auto slot = recipe.find("{theta}");
  if (slot == std::string::npos) {
    if (!param.empty()) throw UnknownLabel("\"" + c.label + "\" takes no parameter");
    return recipe;
  }
  if (!param.empty() && std::find(c.parameters.begin(), c.parameters.end(), param) == c.parameters.end())
    throw UnknownLabel("\"" + param + "\" is not a parameter of \"" + c.label + "\"");
  recipe.replace(slot, 7, param.empty() ? "" : "*" + param);
  return recipe;
}

GroupExpr named_group(std::string_view label) { return parse_group_expr(named_recipe(label)); }

std::uint64_t named_order(std::string_view label) { return named_construction(label).order; }

std::vector<std::string> table1_labels(std::uint32_t n) {
  if (n < 1 || n > data().table1.size())
    throw OutOfRange("the list of groups is available for orders 1 to 15, not " + std::to_string(n));
  return data().table1[n - 1];
}

std::vector<GroupExpr> groups_of_order(std::uint32_t n) {
  std::vector<GroupExpr> out;
  for (const auto& l : table1_labels(n)) out.push_back(make_named(l));
  return out;
}

const std::vector<ExpectedMinimal>& table2() { return data().table2; }
const std::vector<ExpectedMinimal>& table4() { return data().table4; }
const std::vector<ExpectedMinimal>& table5() { return data().table5; }
const std::vector<ExpectedMinimal>& large_constructions() { return data().large; }
const std::vector<PerfectSeed>& perfect_seeds() { return data().seeds; }

std::uint64_t pbound(std::uint64_t p, std::uint64_t k) { return k == 0 ? 1 : ipow(p, 2 * k - 1); }

std::uint64_t nbound(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t k = 0;
    for (std::uint64_t q = p; q <= n; q *= p) ++k;
    out *= pbound(p, k);
  }
  return out;
}

std::uint64_t collection_bound(std::uint64_t n) {
  std::uint64_t out = 1;
  for (auto p : prime_factors(n)) {
    std::uint64_t k = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++k;
    out *= pbound(p, k);
  }
  return out;
}

}  // namespace mge
