#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Root systems of the simple Lie types A-G in the basis of simple roots:
// Cartan data, positive roots by root-string closure, Weyl groups by
// matrix closure, and diagram automorphisms.

namespace qsub::cartan {

using Perm = std::vector<int>;
using RootVec = std::vector<int>;           // coefficients over the simple roots
using RMat = std::vector<std::vector<int>>;  // n x n, acts on root coordinates

struct RootSystem {
  char series = 'A';  // one of A,B,C,D,E,F,G
  int rank = 0;
  RMat cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::vector<RootVec> positive_roots;
  std::vector<RMat> simple_reflections;  // on root coordinates
  std::vector<RMat> coroot_reflections;  // on coroot coordinates (transposes)
  std::vector<Perm> diagram_autos;

  int dim_g() const { return rank + 2 * static_cast<int>(positive_roots.size()); }
  std::string type_code() const { return std::string(1, series) + std::to_string(rank); }
};

// Throws std::invalid_argument for invalid (series, rank) pairs such as D2.
RootSystem build_root_system(char series, int rank);

// Parse a two-character style code such as "A2" or "G2".
RootSystem build_root_system(const std::string& type_code);
bool is_valid_type(char series, int rank);

struct ParabolicSelection {
  std::vector<int> iplus;   // subset of {0..n-1}, indices into Pi
  std::vector<int> iminus;  // subset of {0..n-1}, read with the -Pi convention
  std::vector<RootVec> psi_plus;   // positive roots with support in iplus
  std::vector<RootVec> psi_minus;  // positive roots with support in iminus
  std::vector<int> i_set;          // iplus union iminus
  std::vector<int> i_complement;   // Pi minus i_set
  int dim_l = 0;
  int dim_l0 = 0;
};

// Throws std::invalid_argument on out-of-range indices.
ParabolicSelection parabolic(const RootSystem& rs, const std::vector<int>& iplus,
                             const std::vector<int>& iminus);

struct WeylGroup {
  std::vector<RMat> elements;  // closure of the simple reflections
  std::size_t order = 0;
  // |W| * |diagram autos|: the finite bound on the modeled automorphism slice.
  std::size_t automorphism_slice_bound = 0;
};

// Closure of the simple reflections; throws CapExceeded above element_cap.
WeylGroup weyl_group(const RootSystem& rs, std::size_t element_cap = 10'000'000);

bool root_support_subset(const RootVec& root, const std::vector<int>& index_set);

}  // namespace qsub::cartan
