#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsub/cohom.hpp"
#include "qsub/intmat.hpp"

// Exact arithmetic in cyclotomic fields Q(zeta_m) as residues mod the m-th
// cyclotomic polynomial, 2x2 determinant-one matrices over them, and finite
// matrix groups by closure. No floating point anywhere.

namespace qsub::cyclo {

class CycNum {
 public:
  CycNum() : conductor_(1), coeffs_(1, Rat(0)) {}

  static const std::vector<Int>& cyclotomic_polynomial(long long m);
  static long long phi_degree(long long m);

  static CycNum from_rational(const Rat& r, long long conductor = 1);
  static CycNum zeta(long long m, long long power = 1);

  long long conductor() const { return conductor_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  // Re-express at a conductor that the current one divides.
  CycNum promoted(long long new_conductor) const;

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator-() const;
  CycNum operator*(const CycNum& o) const;
  CycNum inverse() const;  // throws std::domain_error on zero
  CycNum conjugate() const;
  CycNum pow(long long e) const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()

  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // If this is zeta_conductor^e for some e, return e.
  std::optional<long long> zeta_exponent() const;
  // Multiplicative order when this is a root of unity.
  std::optional<long long> root_of_unity_order() const;

  std::string to_string() const;    // polynomial in z
  // Parses sums of terms like "2/3*z^4", "-z", "1/2"; throws on bad input.
  static CycNum parse(long long conductor, const std::string& text);

 private:
  CycNum(long long conductor, std::vector<Rat> coeffs);
  void reduce_(std::vector<Rat>& raw) const;
  long long conductor_;
  std::vector<Rat> coeffs_;  // length phi(conductor), degree-ascending
};

struct Sl2 {
  std::array<CycNum, 4> e;  // [a b; c d] row-major

  static Sl2 from_entries(CycNum a, CycNum b, CycNum c, CycNum d);  // checks det
  static Sl2 identity();
  static Sl2 diag(const CycNum& a);                   // diag(a, a^{-1})
  static Sl2 weyl();                                  // [[0,1],[-1,0]]
  static Sl2 from_rational_entries(Rat a, Rat b, Rat c, Rat d);

  CycNum det() const;
  Sl2 operator*(const Sl2& o) const;
  Sl2 inverse() const;
  bool operator==(const Sl2& o) const;
  bool operator!=(const Sl2& o) const { return !(*this == o); }

  bool is_diagonal() const;
  bool is_antidiagonal() const;
  bool is_monomial() const { return is_diagonal() || is_antidiagonal(); }
  bool is_central() const;  // +-identity
  bool is_identity() const;

  Sl2 promoted(long long conductor) const;  // common conductor for all entries
  long long common_conductor() const;
  std::string to_string() const;
};

struct TorusPredicates {
  bool in_t = false;
  bool in_n_t = false;
  bool is_central = false;
};
TorusPredicates torus_predicates(const Sl2& g);

long long element_order(const Sl2& g, long long cap = 10'000);

struct FinMatrixGroup {
  std::vector<Sl2> elements;  // elements[0] is the identity
  std::vector<Sl2> generators;
  // BFS word data: element i (> 0) was first reached as
  // elements[word_parent[i]] * generators[word_gen[i]].
  std::vector<int> word_parent;
  std::vector<int> word_gen;

  std::size_t order() const { return elements.size(); }
  int index_of(const Sl2& g) const;  // -1 when absent
  std::vector<int> word_of(int index) const;
  // Abstract multiplication table; throws CapExceeded when order is too
  // large for a dense table.
  cohom::FiniteGroup to_finite_group(std::size_t table_cap = 2000) const;
};

// Closure of determinant-one generators; throws CapExceeded past cap
// ("group not verified finite at this cap").
FinMatrixGroup generate_group(const std::vector<Sl2>& gens,
                              std::size_t cap = 10'000);

}  // namespace qsub::cyclo
