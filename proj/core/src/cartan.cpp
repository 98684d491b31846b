#include "qsub/cartan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "qsub/intmat.hpp"

namespace qsub::cartan {

namespace {

RMat standard_cartan(char series, int n) {
  RMat c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j, int cij = -1, int cji = -1) {
    c[i][j] = cij;
    c[j][i] = cji;
  };
  switch (series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':  // alpha_n short
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 2, n - 1, -2, -1);
      break;
    case 'C':  // alpha_n long
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 2, n - 1, -1, -2);
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      // Bourbaki numbering: chain 1-3-4-5-6(-7-8), node 2 hangs off 4.
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2, -2, -1);
      link(2, 3);
      break;
    case 'G':
      link(0, 1, -1, -3);
      break;
    default:
      throw std::invalid_argument("unknown series");
  }
  return c;
}

std::vector<RootVec> positive_roots_by_closure(const RMat& c) {
  const int n = static_cast<int>(c.size());
  std::set<RootVec> known;
  std::vector<RootVec> by_height;
  for (int i = 0; i < n; ++i) {
    RootVec e(n, 0);
    e[i] = 1;
    known.insert(e);
    by_height.push_back(e);
  }
  // Level-by-level root strings: beta + alpha_i is a root iff
  // p - <beta, alpha_i^vee> > 0, with p the depth of the string below beta.
  std::vector<RootVec> frontier = by_height;
  while (!frontier.empty()) {
    std::vector<RootVec> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < n; ++i) {
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += beta[j] * c[j][i];
        int p = 0;
        RootVec down = beta;
        for (;;) {
          down[i] -= 1;
          bool nonneg = std::all_of(down.begin(), down.end(),
                                    [](int x) { return x >= 0; });
          if (!nonneg || !known.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          RootVec up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    for (const auto& r : next) by_height.push_back(r);
    frontier = std::move(next);
  }
  return by_height;
}

std::vector<Perm> diagram_automorphisms(const RMat& c) {
  const int n = static_cast<int>(c.size());
  std::vector<Perm> autos;
  Perm perm(n, -1);
  std::vector<bool> used(n, false);
  auto consistent = [&](int i, int img) {
    for (int j = 0; j < n; ++j) {
      if (perm[j] < 0) continue;
      if (c[i][j] != c[img][perm[j]] || c[j][i] != c[perm[j]][img]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      autos.push_back(perm);
      return;
    }
    for (int img = 0; img < n; ++img) {
      if (used[img] || !consistent(i, img)) continue;
      perm[i] = img;
      used[img] = true;
      self(self, i + 1);
      perm[i] = -1;
      used[img] = false;
    }
  };
  rec(rec, 0);
  return autos;
}

}  // namespace

bool is_valid_type(char series, int rank) {
  switch (series) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 3;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

RootSystem build_root_system(char series, int rank) {
  if (!is_valid_type(series, rank))
    throw std::invalid_argument("invalid simple type " + std::string(1, series) +
                                std::to_string(rank));
  RootSystem rs;
  rs.series = series;
  rs.rank = rank;
  rs.cartan = standard_cartan(series, rank);
  rs.positive_roots = positive_roots_by_closure(rs.cartan);
  const int n = rank;
  for (int k = 0; k < n; ++k) {
    // s_k on root coordinates: c_k <- c_k - sum_i c_i * cartan[i][k].
    RMat m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    for (int i = 0; i < n; ++i) m[k][i] -= rs.cartan[i][k];
    rs.simple_reflections.push_back(m);
    RMat mt(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mt[i][j] = m[j][i];
    rs.coroot_reflections.push_back(mt);
  }
  rs.diagram_autos = diagram_automorphisms(rs.cartan);
  return rs;
}

RootSystem build_root_system(const std::string& type_code) {
  if (type_code.size() < 2)
    throw std::invalid_argument("type code must look like 'A2'");
  char series = type_code[0];
  int rank = 0;
  try {
    rank = std::stoi(type_code.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rank in type code '" + type_code + "'");
  }
  return build_root_system(series, rank);
}

bool root_support_subset(const RootVec& root, const std::vector<int>& index_set) {
  for (std::size_t i = 0; i < root.size(); ++i) {
    if (root[i] == 0) continue;
    if (!std::binary_search(index_set.begin(), index_set.end(),
                            static_cast<int>(i)))
      return false;
  }
  return true;
}

ParabolicSelection parabolic(const RootSystem& rs, const std::vector<int>& iplus,
                             const std::vector<int>& iminus) {
  auto check = [&](const std::vector<int>& v, const char* name) {
    std::vector<int> s(v);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int i : s)
      if (i < 0 || i >= rs.rank)
        throw std::invalid_argument(std::string(name) + ": index out of range");
    return s;
  };
  ParabolicSelection p;
  p.iplus = check(iplus, "iplus");
  p.iminus = check(iminus, "iminus");
  for (const auto& r : rs.positive_roots) {
    if (root_support_subset(r, p.iplus)) p.psi_plus.push_back(r);
    if (root_support_subset(r, p.iminus)) p.psi_minus.push_back(r);
  }
  std::set<int> u(p.iplus.begin(), p.iplus.end());
  u.insert(p.iminus.begin(), p.iminus.end());
  p.i_set.assign(u.begin(), u.end());
  for (int i = 0; i < rs.rank; ++i)
    if (!u.count(i)) p.i_complement.push_back(i);
  p.dim_l = rs.rank + static_cast<int>(p.psi_plus.size() + p.psi_minus.size());
  p.dim_l0 = static_cast<int>(p.i_set.size() + p.psi_plus.size() + p.psi_minus.size());
  return p;
}

WeylGroup weyl_group(const RootSystem& rs, std::size_t element_cap) {
  WeylGroup w;
  std::set<RMat> seen;
  const int n = rs.rank;
  RMat id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  std::vector<RMat> queue{id};
  seen.insert(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    RMat cur = queue[head];
    for (const auto& s : rs.simple_reflections) {
      RMat prod(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          if (s[i][k] == 0) continue;
          for (int j = 0; j < n; ++j) prod[i][j] += s[i][k] * cur[k][j];
        }
      if (seen.insert(prod).second) {
        if (seen.size() > element_cap)
          throw CapExceeded("weyl-closure",
                            "Weyl closure for " + rs.type_code() + " passed " +
                                std::to_string(element_cap) + " elements");
        queue.push_back(std::move(prod));
      }
    }
  }
  w.elements = std::move(queue);
  w.order = w.elements.size();
  w.automorphism_slice_bound = w.order * rs.diagram_autos.size();
  return w;
}

}  // namespace qsub::cartan
