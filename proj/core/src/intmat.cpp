#include "qsub/intmat.hpp"

#include <algorithm>
#include <cassert>

namespace qsub {

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int int_lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / int_gcd(a, b) * b);
}

IMat imat_identity(std::size_t n) {
  IMat id(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  const std::size_t r = a.size();
  const std::size_t k = b.size();
  const std::size_t c = k ? b[0].size() : 0;
  IMat out(r, IVec(c, 0));
  for (std::size_t i = 0; i < r; ++i) {
    assert(a[i].size() == k);
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

IVec imat_apply(const IMat& a, const IVec& x) {
  IVec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    assert(a[i].size() == x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  }
  return out;
}

IMat imat_transpose(const IMat& a) {
  if (a.empty()) return {};
  IMat out(a[0].size(), IVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

bool imat_equal(const IMat& a, const IMat& b) { return a == b; }

IMat imat_from_ll(const std::vector<std::vector<long long>>& m) {
  IMat out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = IVec(m[i].begin(), m[i].end());
  return out;
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> out;
  const std::size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
  for (std::size_t i = 0; i < n; ++i) out.push_back(d[i][i]);
  return out;
}

namespace {

struct SmithState {
  IMat a;
  IMat u, u_inv;  // row side: a = u * a0 * v
  IMat v, v_inv;

  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (auto& r : u_inv) std::swap(r[i], r[j]);
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
    std::swap(v_inv[i], v_inv[j]);
  }
  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= q * a[t][j];
    for (std::size_t j = 0; j < u[i].size(); ++j) u[i][j] -= q * u[t][j];
    for (auto& r : u_inv) r[t] += q * r[i];
  }
  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (auto& r : a) r[j] -= q * r[t];
    for (auto& r : v) r[j] -= q * r[t];
    for (std::size_t c = 0; c < v_inv[t].size(); ++c)
      v_inv[t][c] += q * v_inv[j][c];
  }
  void row_negate(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (auto& r : u_inv) r[i] = -r[i];
  }
};

}  // namespace

SmithResult smith_normal_form(const IMat& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  SmithState s;
  s.a = m;
  s.u = imat_identity(rows);
  s.u_inv = imat_identity(rows);
  s.v = imat_identity(cols);
  s.v_inv = imat_identity(cols);

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    // Pick the nonzero entry of least magnitude in the trailing block.
    for (;;) {
      std::size_t pi = t, pj = t;
      bool found = false;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (s.a[i][j] == 0) continue;
          Int mag = abs(s.a[i][j]);
          if (!found || mag < best) {
            best = mag;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        t = n;  // trailing block all zero
        break;
      }
      s.row_swap(t, pi);
      s.col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Int q = s.a[i][t] / s.a[t][t];
        s.row_sub(i, t, q);
        if (s.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Int q = s.a[t][j] / s.a[t][t];
        s.col_sub(j, t, q);
        if (s.a[t][j] != 0) clean = false;
      }
      if (!clean) continue;  // remainders became new, smaller pivot candidates

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (s.a[i][j] % s.a[t][t] != 0) {
            s.row_sub(t, i, Int(-1));  // row_t += row_i
            divides = false;
          }
      if (divides) break;
    }
    if (t >= n) break;
  }
  for (std::size_t t = 0; t < n; ++t)
    if (s.a[t][t] < 0) s.row_negate(t);

  return SmithResult{s.u, s.a, s.v, s.u_inv, s.v_inv};
}

Int imat_det(const IMat& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IMat a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IMat hnf_rows(const IMat& gens) {
  if (gens.empty()) return {};
  const std::size_t cols = gens[0].size();
  IMat a = gens;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < a.size(); ++j) {
    // Fold all rows below r with a nonzero in column j into one pivot row.
    std::size_t p = r;
    while (p < a.size() && a[p][j] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      while (a[i][j] != 0) {
        Int q = a[r][j] / a[i][j];
        for (std::size_t c = 0; c < cols; ++c) a[r][c] -= q * a[i][c];
        std::swap(a[r], a[i]);
      }
    }
    if (a[r][j] < 0)
      for (auto& x : a[r]) x = -x;
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q = a[i][j] / a[r][j];
      if (a[i][j] - q * a[r][j] < 0) q -= 1;
      if (q != 0)
        for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[r][c];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

bool hnf_contains(const IMat& h, const IVec& x) {
  IVec rem = x;
  std::size_t row = 0;
  const std::size_t cols = x.size();
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t pivot_col = cols;
    if (row < h.size()) {
      pivot_col = 0;
      while (pivot_col < cols && h[row][pivot_col] == 0) ++pivot_col;
    }
    if (pivot_col == j) {
      if (rem[j] % h[row][j] != 0) return false;
      Int q = rem[j] / h[row][j];
      for (std::size_t c = 0; c < cols; ++c) rem[c] -= q * h[row][c];
      ++row;
    } else if (rem[j] != 0) {
      return false;
    }
  }
  return true;
}

QuotientStructure lattice_quotient(const IMat& big, const IMat& small) {
  IMat hb = hnf_rows(big);
  IMat hs = hnf_rows(small);
  if (hb.empty() || hb.size() != hb[0].size() || hs.size() != hb.size())
    throw std::invalid_argument("lattice_quotient: lattices must be full rank");
  const std::size_t k = hb.size();

  // Express each row of hs in the hb basis (exact since hs <= hb and hb is
  // upper triangular after HNF).
  IMat x(k, IVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    IVec rem = hs[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (rem[j] == 0) continue;
      if (rem[j] % hb[j][j] != 0)
        throw std::invalid_argument("lattice_quotient: small not inside big");
      Int q = rem[j] / hb[j][j];
      x[i][j] = q;
      for (std::size_t c = 0; c < k; ++c) rem[c] -= q * hb[j][c];
    }
    for (const auto& v : rem)
      if (v != 0)
        throw std::invalid_argument("lattice_quotient: small not inside big");
  }

  SmithResult sm = smith_normal_form(x);
  // hs-lattice = rows of D * (v_inv * hb); quotient is sum Z/d_j on the
  // corresponding rows of v_inv * hb.
  IMat new_basis = imat_mul(sm.v_inv, hb);
  QuotientStructure out;
  for (std::size_t j = 0; j < k; ++j) {
    Int d = sm.d[j][j];
    if (d == 1) continue;
    if (d == 0)
      throw std::invalid_argument("lattice_quotient: infinite quotient");
    out.factors.push_back(d);
    out.basis.push_back(new_basis[j]);
  }
  return out;
}

IMat congruence_kernel(const IMat& sys, const std::vector<Int>& eq_mod,
                       const std::vector<Int>& var_mod) {
  const std::size_t rows = sys.size();
  const std::size_t vars = var_mod.size();
  // Integer solutions of [sys | diag(eq_mod)] * (x; y) = 0, projected to x,
  // plus the per-variable modulus lattice.
  IMat m(rows, IVec(vars + rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    assert(sys[i].size() == vars);
    for (std::size_t j = 0; j < vars; ++j) m[i][j] = sys[i][j];
    m[i][vars + i] = eq_mod[i];
  }
  IMat gens;
  if (rows == 0) {
    // No constraints: the whole group.
    gens = imat_identity(vars);
  } else {
    SmithResult sm = smith_normal_form(m);
    std::size_t rank = 0;
    const std::size_t n = std::min(rows, vars + rows);
    for (std::size_t i = 0; i < n; ++i)
      if (sm.d[i][i] != 0) ++rank;
    // Kernel basis: columns of v with zero image.
    for (std::size_t j = rank; j < vars + rows; ++j) {
      IVec g(vars);
      for (std::size_t i = 0; i < vars; ++i) g[i] = sm.v[i][j];
      gens.push_back(std::move(g));
    }
  }
  for (std::size_t i = 0; i < vars; ++i) {
    IVec g(vars, 0);
    g[i] = var_mod[i];
    gens.push_back(std::move(g));
  }
  IMat h = hnf_rows(gens);
  // Reduce representatives into the fundamental box of the moduli.
  for (auto& row : h)
    for (std::size_t j = 0; j < vars; ++j)
      if (var_mod[j] != 0) {
        row[j] %= var_mod[j];
        if (row[j] < 0) row[j] += var_mod[j];
      }
  return h;
}

std::optional<IVec> solve_congruence(const IMat& sys,
                                     const std::vector<Int>& eq_mod,
                                     const std::vector<Int>& var_mod,
                                     const IVec& rhs) {
  const std::size_t rows = sys.size();
  const std::size_t vars = var_mod.size();
  if (rows == 0) return IVec(vars, 0);
  IMat m(rows, IVec(vars + rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) m[i][j] = sys[i][j];
    m[i][vars + i] = eq_mod[i];
  }
  SmithResult sm = smith_normal_form(m);
  IVec y = imat_apply(sm.u, rhs);
  IVec z(vars + rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    Int d = sm.d[i][i];
    if (d == 0) {
      if (y[i] != 0) return std::nullopt;
    } else {
      if (y[i] % d != 0) return std::nullopt;
      z[i] = y[i] / d;
    }
  }
  IVec full(vars + rows, 0);
  for (std::size_t i = 0; i < vars + rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) full[i] += sm.v[i][j] * z[j];
  IVec x(vars);
  for (std::size_t j = 0; j < vars; ++j) {
    x[j] = full[j];
    if (var_mod[j] != 0) {
      x[j] %= var_mod[j];
      if (x[j] < 0) x[j] += var_mod[j];
    }
  }
  return x;
}

}  // namespace qsub
