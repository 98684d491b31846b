#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsub/intmat.hpp"

// Finite abelian groups in invariant-factor normal form. Elements are
// integer vectors reduced mod the factor chain; subgroups carry a canonical
// Hermite basis so that equality and membership are exact.

namespace qsub::finab {

using Vec = std::vector<long long>;
using LMat = std::vector<std::vector<long long>>;

struct FinAbGroup {
  std::vector<long long> factors;  // d1 | d2 | ... | dk, each >= 2; empty = trivial

  static FinAbGroup from_factors(std::vector<long long> fs);  // validates chain
  // Canonicalize an arbitrary list of cyclic orders into invariant factors.
  static FinAbGroup from_cyclic_orders(const std::vector<long long>& orders);

  std::size_t rank() const { return factors.size(); }
  Int order() const;
  long long exponent() const;  // 1 for the trivial group
  Vec zero() const { return Vec(rank(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(long long k, const Vec& a) const;
  bool is_zero(const Vec& a) const;
  long long order_of(const Vec& a) const;
  // Mixed-radix element enumeration; throws CapExceeded if order() > cap.
  std::vector<Vec> elements(std::size_t cap = 1'000'000) const;
  std::size_t index_of(const Vec& a) const;
  Vec element_at(std::size_t idx) const;

  bool operator==(const FinAbGroup& o) const { return factors == o.factors; }
  std::string to_string() const;  // e.g. "[2,4]"
};

struct GroupHom {
  FinAbGroup domain;
  FinAbGroup codomain;
  LMat matrix;  // codomain.rank() x domain.rank(); column i = image of e_i

  Vec apply(const Vec& v) const;
  bool well_defined() const;  // d_i * (image of e_i) == 0 in the codomain
  bool is_injective(std::size_t cap = 1'000'000) const;
  bool is_identity() const;
  GroupHom compose(const GroupHom& inner) const;  // this o inner
  bool operator==(const GroupHom& o) const;
};

GroupHom identity_hom(const FinAbGroup& g);
GroupHom zero_hom(const FinAbGroup& domain, const FinAbGroup& codomain);

// A subgroup of `ambient`, canonicalized: `basis` lists generators whose
// classes give a direct-sum decomposition with the stated invariant factors.
struct Subgroup {
  FinAbGroup ambient;
  IMat lattice_hnf;  // HNF of [generators; diag(ambient factors)]
  std::vector<long long> invariants;  // invariant factors of the subgroup
  std::vector<Vec> basis;             // basis[j] has order invariants[j]
  Int order() const;
  bool contains(const Vec& v) const;
  std::vector<Vec> elements(std::size_t cap = 1'000'000) const;
  FinAbGroup group() const { return FinAbGroup::from_cyclic_orders(invariants); }
  bool operator==(const Subgroup& o) const {
    return ambient == o.ambient && lattice_hnf == o.lattice_hnf;
  }
};

Subgroup subgroup_from_generators(const FinAbGroup& ambient,
                                  const std::vector<Vec>& gens);
Subgroup full_subgroup(const FinAbGroup& ambient);
Subgroup trivial_subgroup(const FinAbGroup& ambient);

// Invariant factors of big/small for nested subgroups of a common ambient
// group, with coset representatives generating the quotient summands.
struct QuotientGroup {
  std::vector<long long> invariants;
  std::vector<Vec> reps;
};
QuotientGroup subgroup_quotient(const Subgroup& big, const Subgroup& small);

// Hom(A, B) = sum Z/gcd(d_i, e_j), with explicit matrix enumeration.
struct HomGroup {
  FinAbGroup structure;
  std::vector<GroupHom> elements;
};
HomGroup hom_group(const FinAbGroup& a, const FinAbGroup& b,
                   std::size_t cap = 1'000'000);
Int hom_group_order(const FinAbGroup& a, const FinAbGroup& b);

// All automorphisms of a, enumerated exactly. Throws CapExceeded if
// |a| > cap.
std::vector<GroupHom> aut_group(const FinAbGroup& a, std::size_t cap = 1'000);

// Kernel of a hom as a subgroup of its domain.
Subgroup kernel(const GroupHom& h);

// N is a subgroup of the character group of T (characters of T = sum Z/d_i
// are parameterized by the same vectors, pairing <z,x> = sum z_i x_i / d_i).
// Returns N^perp = { x in T : <z,x> = 0 for all z in N }.
Subgroup annihilator(const Subgroup& n_in_dual, const FinAbGroup& t);

// Invariant factors of a direct sum of groups.
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

// Reconstruct the invariant factors of a finite abelian group from the
// orders of all its elements (the counts #{x : kx = 0} determine the type).
FinAbGroup invariants_from_element_orders(const std::vector<long long>& orders);

}  // namespace qsub::finab
