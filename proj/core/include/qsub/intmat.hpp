#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact integer linear algebra over Z: Smith and Hermite normal forms,
// congruence kernels and lattice quotients. Everything downstream (finite
// abelian groups, cocycle solving, annihilators) reduces to these.

namespace qsub {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IMat = std::vector<std::vector<Int>>;
using IVec = std::vector<Int>;

// Thrown when a configured enumeration/closure cap would be exceeded.
// Caps fail hard; nothing is silently truncated.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& cap_name, const std::string& detail)
      : std::runtime_error("cap '" + cap_name + "' exceeded: " + detail),
        cap_name_(cap_name) {}
  const std::string& cap_name() const { return cap_name_; }

 private:
  std::string cap_name_;
};

IMat imat_identity(std::size_t n);
IMat imat_mul(const IMat& a, const IMat& b);
IVec imat_apply(const IMat& a, const IVec& x);  // a * x (column vector)
IMat imat_transpose(const IMat& a);
bool imat_equal(const IMat& a, const IMat& b);
IMat imat_from_ll(const std::vector<std::vector<long long>>& m);

// u * m * v = d, with d diagonal, nonnegative, d[i] | d[i+1];
// u, v unimodular and u_inv, v_inv their exact inverses.
struct SmithResult {
  IMat u, d, v;
  IMat u_inv, v_inv;
  std::vector<Int> diagonal() const;
};
SmithResult smith_normal_form(const IMat& m);

// Int determinant via fraction-free elimination (used for det DC checks).
Int imat_det(const IMat& m);

// Canonical row-style Hermite form of the lattice spanned by the rows:
// pivots positive, entries above each pivot reduced into [0, pivot).
// Zero rows are dropped; the result uniquely identifies the row lattice.
IMat hnf_rows(const IMat& gens);

// Lattice membership: is x in the row span of the HNF basis h?
bool hnf_contains(const IMat& h, const IVec& x);

// Invariant factors of L_big / L_small for full-rank lattices
// L_small <= L_big in Z^k, both given by (any) generating rows.
// Returns factors (1s dropped) and matching generator rows of L_big whose
// classes generate the quotient cyclically.
struct QuotientStructure {
  std::vector<Int> factors;
  IMat basis;  // basis[j] generates a Z/factors[j] summand
};
QuotientStructure lattice_quotient(const IMat& big, const IMat& small);

// Solutions x in prod Z/moduli[i] of sys * x = 0 (mod eq_mod[r] in row r),
// returned as generator rows of the solution subgroup.
IMat congruence_kernel(const IMat& sys, const std::vector<Int>& eq_mod,
                       const std::vector<Int>& var_mod);

// One solution of sys * x = rhs (mod eq_mod[r] in row r) with x reduced mod
// var_mod, or nullopt when the system is unsolvable.
std::optional<IVec> solve_congruence(const IMat& sys,
                                     const std::vector<Int>& eq_mod,
                                     const std::vector<Int>& var_mod,
                                     const IVec& rhs);

Int int_gcd(Int a, Int b);
Int int_lcm(Int a, Int b);

}  // namespace qsub
