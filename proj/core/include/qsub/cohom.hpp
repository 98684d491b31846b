#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsub/finab.hpp"
#include "qsub/intmat.hpp"

// Degree <= 1 group cohomology of a finite group acting on the right on a
// finite abelian module, written additively:
//   d0(g)(x)    = g <- x  -  g
//   d1(v)(x,y)  = (v(x) <- y) + v(y) - v(xy)
// H1 is computed two ways (full cochain enumeration, and a linear system on
// generator values) that are checked against each other, plus the torsion
// reduction for the divisible torus at level m = |Gamma|.

namespace qsub::cohom {

using finab::FinAbGroup;
using finab::LMat;
using finab::Vec;

struct FiniteGroup {
  int order = 1;
  std::vector<int> table;  // row-major, table[x*order + y] = x*y
  int identity = 0;
  std::vector<int> inverse;

  int mul(int x, int y) const { return table[x * order + y]; }
  int inv(int x) const { return inverse[x]; }
  int element_order(int x) const;
  bool is_abelian() const;

  // Validates associativity, two-sided identity and inverses.
  static FiniteGroup from_table(std::vector<int> table, int order);
  static FiniteGroup cyclic(int k);
  static FiniteGroup dihedral(int k);  // order 2k
  static FiniteGroup from_abelian(const FinAbGroup& a);

  // A small generating set (greedy) and an expression of every element as a
  // word in it (BFS); words are lists of generator indices.
  std::vector<int> generating_set() const;
  bool operator==(const FiniteGroup& o) const {
    return order == o.order && table == o.table;
  }
};

// All isomorphisms from a to b (empty when not isomorphic); aut(g) is the
// special case a = b. Maps are given as img[x] tables.
std::vector<std::vector<int>> all_isomorphisms(const FiniteGroup& a,
                                               const FiniteGroup& b,
                                               std::size_t cap = 200'000);
std::vector<std::vector<int>> automorphisms(const FiniteGroup& g,
                                            std::size_t cap = 200'000);

// Abelianization with an explicit projection to invariant-factor coordinates.
struct Abelianization {
  FinAbGroup group;
  std::vector<Vec> proj;  // proj[x] = class of x in the invariant coordinates
};
Abelianization abelianize(const FiniteGroup& g);

struct GammaModule {
  FiniteGroup gamma;
  FinAbGroup mod;
  std::vector<LMat> action;  // action[x] * m = m <- x

  Vec act(int x, const Vec& m) const;
  static GammaModule trivial(const FiniteGroup& gamma, const FinAbGroup& mod);
  // Per-element matrices; validated: A_1 = id, A_{xy} = A_y A_x, each A_x an
  // automorphism.
  static GammaModule from_matrices(const FiniteGroup& gamma, const FinAbGroup& mod,
                                   std::vector<LMat> action);
};

struct Cochain1 {
  std::vector<Vec> values;  // indexed by gamma element
  bool operator==(const Cochain1& o) const { return values == o.values; }
  bool operator<(const Cochain1& o) const { return values < o.values; }
};

Cochain1 zero_cochain(const GammaModule& m);
Cochain1 d0(const Vec& g, const GammaModule& m);

struct Cochain2 {
  std::vector<Vec> values;  // indexed by x*order + y
};
Cochain2 d1(const Cochain1& v, const GammaModule& m);
bool is_cocycle(const Cochain1& v, const GammaModule& m);
bool is_coboundary(const Cochain1& v, const GammaModule& m,
                   std::size_t cap = 1'000'000);

// Twisted action of the module on cocycles: (g . v)(x) = (g <- x) + v(x) - g.
Cochain1 twisted_act(const Vec& g, const Cochain1& v, const GammaModule& m);

struct H1Result {
  Int z1_order = 1, b1_order = 1, h1_order = 1;
  std::vector<long long> h1_invariants;  // invariant factors of H1
  std::vector<Cochain1> z1;              // filled when enumerable under cap
  std::vector<Cochain1> b1;
  std::vector<Cochain1> h1_reps;  // lexicographically least per class
  std::string path;               // "enumeration" or "linear"
};

// Enumeration path: walks all |M|^(|Gamma|-1) cochains with v(1) = 0.
H1Result h1_enumeration(const GammaModule& m, std::size_t cap = 10'000'000);
// Linear path: solves the cocycle identity on generator values over Z.
H1Result h1_linear(const GammaModule& m, std::size_t rep_cap = 100'000);
// Crossover dispatcher.
H1Result h1(const GammaModule& m, std::size_t cap = 10'000'000);

// Order of a class [v] in H1 (abelian module): least t >= 1 with t*v in B1.
long long class_order(const Cochain1& v, const GammaModule& m,
                      const H1Result& res);

// --- Torsion reduction for the divisible torus -------------------------
//
// The module is the torsion of (Q/Z)^n with gamma acting through integer
// matrices in GL_n(Z) (right action). Every divisible-level class has a
// representative at level D_m, m = |Gamma|; classes that merge over the
// divisible module are detected exactly by solving d0(g) = v with g allowed
// in a bounded-denominator level.
struct TorsionH1 {
  long long level = 1;  // m
  H1Result at_level;    // H1(Gamma, D_m)
  Int identification_kernel_order = 1;  // classes dying over the torus
  Int h1_torus_order = 1;               // |H1(D_m)| / |kernel|
  std::vector<Cochain1> torus_reps;     // representatives of surviving classes
};

TorsionH1 h1_torsion_reduction(const FiniteGroup& gamma, int torus_rank,
                               const std::vector<LMat>& action_on_lattice,
                               long long m_cap = 1'000);

// The finite module (Z/level)^n with the induced action (helper for tests).
GammaModule torsion_level_module(const FiniteGroup& gamma, int torus_rank,
                                 const std::vector<LMat>& action_on_lattice,
                                 long long level);

}  // namespace qsub::cohom
