#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mge/group.hpp"

namespace mge {

// Isomorphism invariants of a dense group. Two fingerprints compare equal
// iff their canonical strings do.
struct Fingerprint {
  std::uint64_t order = 0;
  bool abelian = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> element_orders;  // (order, count)
  std::uint64_t center_order = 0;
  std::uint64_t derived_order = 0;
  std::uint64_t exponent = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> class_sizes;  // (size, count)
  std::vector<std::uint32_t> abelian_invariants;                     // when abelian
  std::vector<std::uint32_t> abelianization;                         // invariants of G/G'
  std::vector<std::uint32_t> profile_counts;                         // elements per refined profile class

  std::string canonical() const;
  bool operator==(const Fingerprint& o) const { return canonical() == o.canonical(); }
};

Fingerprint fingerprint(const TableGroup& g);

enum class MorphismKind { Homomorphism, Monomorphism, Isomorphism };
const char* kind_name(MorphismKind k);

// A map recorded on generators together with the induced element map.
// Sources are always dense; map[x] is the image of source element x.
struct Morphism {
  TablePtr source;
  GroupPtr target;
  MorphismKind kind = MorphismKind::Homomorphism;
  std::vector<std::uint32_t> generators;
  std::vector<Elem> images;
  std::vector<Elem> map;

  // Full homomorphism check plus the injectivity / bijectivity its kind
  // demands. Dense sources up to 1024 elements are checked on all pairs,
  // larger ones on every Cayley-graph edge.
  bool verify() const;
  // Certificate-compatible record: expressions plus generator and image words.
  nlohmann::json to_json() const;
};

// Composition second o first (first applied first).
Morphism compose(const Morphism& first, const Morphism& second);
// Inverse of an isomorphism between dense groups.
Morphism inverse(const Morphism& iso);

// Rebuilds a morphism from its generator and image words; nullopt when the
// words do not extend to a map of the recorded kind.
std::optional<Morphism> replay(const TablePtr& source, const GroupPtr& target, const std::vector<std::string>& source_words,
                               const std::vector<std::string>& image_words, MorphismKind kind);

struct SearchOptions {
  std::uint64_t node_budget = 200'000'000;  // candidate assignments before SearchBudgetExceeded
  std::uint64_t pool_limit = 2'000'000;     // largest element pool materialized in a structured target
};

// Greedy generating sequence: largest element order first, then largest
// closure growth; ties go to the smallest index.
std::vector<std::uint32_t> generating_sequence(const TableGroup& g);

std::optional<Morphism> is_isomorphic(const TablePtr& a, const TablePtr& b, const SearchOptions& opts = {});
// As is_isomorphic without the fingerprint pre-filter, for callers that
// already bucket by fingerprint.
std::optional<Morphism> find_isomorphism(const TablePtr& a, const TablePtr& b, const SearchOptions& opts = {});

// Monomorphism h -> g. For structured targets the candidate pool is the
// subgroup supported on the given components (every component when empty,
// subject to pool_limit). Throws SearchBudgetExceeded.
std::optional<Morphism> find_embedding(const TablePtr& h, const GroupPtr& g,
                                       const std::vector<std::size_t>& support = {}, const SearchOptions& opts = {});

// Streams every automorphism exactly once as a full element map; the callback
// returns false to stop early. Returns the number of automorphisms visited.
// Throws AutBudgetExceeded when more than `budget` are produced.
std::uint64_t for_each_automorphism(const TablePtr& g, const std::function<bool(const std::vector<std::uint32_t>&)>& fn,
                                    std::uint64_t budget = std::uint64_t{1} << 25);
// As above but always through the generic backtracking path.
std::uint64_t for_each_automorphism_generic(const TablePtr& g,
                                            const std::function<bool(const std::vector<std::uint32_t>&)>& fn,
                                            std::uint64_t budget = std::uint64_t{1} << 25);
std::uint64_t automorphism_count(const TablePtr& g, std::uint64_t budget = std::uint64_t{1} << 25);

}  // namespace mge
