#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mge/expr.hpp"
#include "mge/perm.hpp"

namespace mge {

using Elem = std::uint64_t;

class TableGroup;

// A realized finite group. Implementations are immutable once built; lazily
// computed caches are guarded so instances may be shared across threads.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::uint64_t order() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem mul(Elem x, Elem y) const = 0;
  virtual Elem inv(Elem x) const = 0;
  // Membership test for values produced by mul/inv/resolve. Structured
  // groups may resolve symbols that lie outside the group itself.
  virtual bool contains(Elem x) const = 0;
  // Looks up a bound name, cycle string or component symbol.
  virtual std::optional<Elem> resolve(std::string_view symbol) const = 0;
  // Human readable word for an element in bound generator names.
  virtual std::string describe(Elem x) const = 0;
  virtual const TableGroup* as_table() const { return nullptr; }

  Elem pow(Elem x, long k) const;

  const GroupExpr& expr() const { return expr_; }
  void set_expr(GroupExpr e) { expr_ = std::move(e); }

  // Bound generators in declaration order; names are unique.
  const std::vector<std::pair<std::string, Elem>>& bindings() const { return bindings_; }
  void set_bindings(std::vector<std::pair<std::string, Elem>> b) { bindings_ = std::move(b); }
  std::optional<Elem> binding(std::string_view name) const;

 protected:
  GroupExpr expr_;
  std::vector<std::pair<std::string, Elem>> bindings_;
};

using GroupPtr = std::shared_ptr<const Group>;

// Per-element invariants used by fingerprints and isomorphism search.
struct ElementProfile {
  std::vector<std::uint32_t> order;        // element order
  std::vector<std::uint32_t> centralizer;  // |C(x)|
  std::vector<std::uint32_t> roots;        // #{y : y^2 = x}
  std::vector<std::uint32_t> power_class;  // class id of x^2 after refinement
  std::vector<std::uint32_t> cls;          // refined profile class id
};

// Dense multiplication table. Element 0 is always the identity.
class TableGroup final : public Group {
 public:
  static constexpr std::uint32_t kMaxOrder = 65535;

  // Computes the table from a product callback on indices [0, n).
  static std::shared_ptr<TableGroup> from_mul(std::uint32_t n,
                                              const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul);
  // Wraps a raw table without validation; inverses are filled where found.
  static std::shared_ptr<TableGroup> from_raw(std::uint32_t n, std::vector<std::uint16_t> table);
  // Closure of permutations; element labels are cycle strings.
  static std::shared_ptr<TableGroup> from_perms(std::size_t degree, const std::vector<Perm>& gens,
                                                std::uint32_t limit);

  std::uint32_t size() const { return n_; }
  std::uint32_t m(std::uint32_t a, std::uint32_t b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  std::uint32_t i(std::uint32_t a) const { return inv_[a]; }
  const std::vector<std::uint16_t>& raw_table() const { return table_; }
  void corrupt_entry(std::uint32_t a, std::uint32_t b, std::uint32_t value);  // test hook

  std::uint64_t order() const override { return n_; }
  Elem identity() const override { return 0; }
  Elem mul(Elem x, Elem y) const override { return m(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)); }
  Elem inv(Elem x) const override { return inv_[x]; }
  bool contains(Elem x) const override { return x < n_; }
  std::optional<Elem> resolve(std::string_view symbol) const override;
  std::string describe(Elem x) const override;
  const TableGroup* as_table() const override { return this; }

  std::uint32_t power(std::uint32_t x, long k) const;
  std::uint32_t element_order(std::uint32_t x) const;

  // Permutation data when the group was realized from permutations.
  bool is_perm_group() const { return !perms_.empty(); }
  std::size_t perm_degree() const { return perm_degree_; }
  const Perm& perm(std::uint32_t x) const { return perms_[x]; }
  std::optional<std::uint32_t> perm_index(const Perm& p) const;

  // Symbols not bound here are looked up in linked groups and mapped along.
  struct Link {
    std::shared_ptr<const Group> source;
    std::vector<std::uint32_t> map;  // source element -> this element
  };
  void add_link(Link link) { links_.push_back(std::move(link)); }
  const std::vector<Link>& links() const { return links_; }

  const ElementProfile& profile() const;

  // Structural hash of the table (hex SHA-256).
  std::string table_hash() const;

 private:
  TableGroup() = default;
  void fill_inverses();

  std::uint32_t n_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint32_t> inv_;
  std::size_t perm_degree_ = 0;
  std::vector<Perm> perms_;
  std::unordered_map<std::string, std::uint32_t> perm_lookup_;
  std::vector<Link> links_;

  mutable std::once_flag profile_once_;
  mutable std::unique_ptr<ElementProfile> profile_;
  mutable std::once_flag words_once_;
  mutable std::vector<std::string> words_;
};

using TablePtr = std::shared_ptr<const TableGroup>;

// Direct product of dense components, optionally extended by an elementary
// abelian 2-group D of component-wise involutory automorphisms. An element is
// (component tuple, D-vector) packed into 64 bits; the product is
// (b1, d1)(b2, d2) = (b1 * d1(b2), d1 + d2). Only D-vectors in the allowed
// span belong to the group, so twisted words are evaluated in the full
// structure and membership is checked afterwards.
class TwistedGroup final : public Group {
 public:
  struct Component {
    TablePtr group;
    std::string twist_name;              // empty when the component carries no involution
    std::vector<std::uint32_t> twist;    // involutory automorphism of group
    std::optional<Perm> twist_perm;      // when the twist is conjugation by this permutation
  };

  TwistedGroup(std::vector<Component> components, std::vector<std::uint32_t> span_basis);

  std::uint64_t order() const override { return order_; }
  Elem identity() const override { return 0; }
  Elem mul(Elem x, Elem y) const override;
  Elem inv(Elem x) const override;
  bool contains(Elem x) const override;
  std::optional<Elem> resolve(std::string_view symbol) const override;
  std::string describe(Elem x) const override;

  std::size_t component_count() const { return components_.size(); }
  const Component& component(std::size_t i) const { return components_[i]; }
  std::uint32_t coord(Elem x, std::size_t i) const {
    return static_cast<std::uint32_t>((x >> offset_[i]) & mask_[i]);
  }
  std::uint32_t dbits(Elem x) const { return static_cast<std::uint32_t>(x >> dshift_); }
  Elem pack(const std::vector<std::uint32_t>& coords, std::uint32_t d) const;
  Elem embed(std::size_t component, std::uint32_t x) const {
    return static_cast<Elem>(x) << offset_[component];
  }
  Elem twist_element(std::uint32_t dmask) const { return static_cast<Elem>(dmask) << dshift_; }
  // Bit index of a component's involution, or -1.
  int twist_bit(std::size_t component) const { return bit_of_[component]; }
  std::size_t twist_count() const { return bit_component_.size(); }
  const std::vector<std::uint32_t>& span() const { return span_; }
  const std::vector<std::uint32_t>& span_basis() const { return span_basis_; }
  std::uint64_t base_order() const;

  // Exact exponent computed component-wise.
  std::uint64_t exponent() const;

  // Enumerates the subgroup of elements supported on the given components
  // (all other coordinates trivial) together with every allowed D-vector.
  std::uint64_t support_size(const std::vector<std::size_t>& support) const;
  void for_each_in_support(const std::vector<std::size_t>& support, const std::function<void(Elem)>& fn) const;

 private:
  std::vector<Component> components_;
  std::vector<unsigned> offset_;
  std::vector<Elem> mask_;
  std::vector<int> bit_of_;
  std::vector<std::size_t> bit_component_;
  unsigned dshift_ = 0;
  std::vector<std::uint32_t> span_basis_;
  std::vector<std::uint32_t> span_;
  std::vector<char> in_span_;
  std::uint64_t order_ = 1;
  // Component-local generator name -> bound name, built on first describe.
  mutable std::once_flag rename_once_;
  mutable std::vector<std::unordered_map<std::string, std::string>> rename_;
};

// Evaluates a generator word. Unknown identifiers are split greedily into
// bound names ("a1c" -> a1, c). Throws UnknownGenerator.
Elem eval_word(const Group& g, const Word& w);
Elem eval_word(const Group& g, std::string_view text);

}  // namespace mge
