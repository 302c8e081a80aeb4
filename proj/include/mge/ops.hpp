#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mge/group.hpp"

namespace mge {

struct Subgroup {
  GroupPtr ambient;
  std::vector<Elem> elements;    // closure order, identity first
  std::vector<Elem> generators;
  std::vector<Elem> sorted;      // elements in ascending order, for membership

  std::uint64_t order() const { return elements.size(); }
  bool contains(Elem x) const;
  // Faithful dense realization; element k is elements[k] and the bound
  // generators s1.. are the subgroup generators.
  TablePtr as_group() const;
};

Subgroup make_subgroup(GroupPtr ambient, std::vector<Elem> elements, std::vector<Elem> generators);

std::uint64_t element_order(const Group& g, Elem x);

// Smallest subgroup containing gens. Throws SubgroupLimitExceeded once the
// closure passes the limit (default: engine subgroup limit).
Subgroup generated_subgroup(GroupPtr g, const std::vector<Elem>& gens, std::uint64_t limit = 0);

Subgroup center(const TablePtr& g);
Subgroup derived_subgroup(const TablePtr& g);
Subgroup centralizer(const TablePtr& g, const std::vector<Elem>& of);
std::uint64_t exponent(const Group& g);
Subgroup sylow_subgroup(const TablePtr& g, std::uint32_t p);

bool is_abelian(const TableGroup& g);
bool is_normal(const TableGroup& g, const Subgroup& n);

struct QuotientResult {
  TablePtr group;
  std::vector<std::uint32_t> projection;  // ambient element -> coset index
};
// Cosets are numbered in order of their least element.
QuotientResult quotient(const TablePtr& g, const std::vector<Elem>& normal_gens);

bool check_table(const TableGroup& g);

std::vector<std::uint32_t> conjugacy_class_sizes(const TableGroup& g);

// Normal subgroups of index p: kernels of the homomorphisms onto C_p.
std::vector<Subgroup> prime_index_normal_subgroups(const TablePtr& g, std::uint32_t p);

// Abelian invariants as prime powers in ascending order; g must be abelian.
std::vector<std::uint32_t> abelian_invariants(const TableGroup& g);

std::vector<std::uint32_t> prime_factors(std::uint64_t n);
bool is_prime(std::uint64_t n);

}  // namespace mge
