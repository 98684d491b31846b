#include "qsub/finab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsub::finab {

namespace {

long long ll_gcd(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace

FinAbGroup FinAbGroup::from_factors(std::vector<long long> fs) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
    if (i + 1 < fs.size() && fs[i + 1] % fs[i] != 0)
      throw std::invalid_argument("invariant factors must form a divisor chain");
  }
  FinAbGroup g;
  g.factors = std::move(fs);
  return g;
}

FinAbGroup FinAbGroup::from_cyclic_orders(const std::vector<long long>& orders) {
  std::vector<long long> ds;
  for (long long d : orders) {
    if (d <= 0) throw std::invalid_argument("cyclic orders must be positive");
    if (d > 1) ds.push_back(d);
  }
  if (ds.empty()) return FinAbGroup{};
  IMat diag(ds.size(), IVec(ds.size(), 0));
  for (std::size_t i = 0; i < ds.size(); ++i) diag[i][i] = ds[i];
  SmithResult sm = smith_normal_form(diag);
  std::vector<long long> out;
  for (const Int& d : sm.diagonal())
    if (d > 1) out.push_back(static_cast<long long>(d));
  std::sort(out.begin(), out.end());
  return FinAbGroup::from_factors(std::move(out));
}

Int FinAbGroup::order() const {
  Int o = 1;
  for (long long d : factors) o *= d;
  return o;
}

long long FinAbGroup::exponent() const {
  return factors.empty() ? 1 : factors.back();
}

Vec FinAbGroup::reduce(Vec v) const {
  if (v.size() != rank()) throw std::invalid_argument("element rank mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] %= factors[i];
    if (v[i] < 0) v[i] += factors[i];
  }
  return v;
}

Vec FinAbGroup::add(const Vec& a, const Vec& b) const {
  Vec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = (a[i] + b[i]) % factors[i];
  return r;
}

Vec FinAbGroup::neg(const Vec& a) const {
  Vec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = (factors[i] - a[i]) % factors[i];
  return r;
}

Vec FinAbGroup::scale(long long k, const Vec& a) const {
  Vec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    long long m = factors[i];
    long long kk = ((k % m) + m) % m;
    r[i] = (kk * (a[i] % m)) % m;
  }
  return r;
}

bool FinAbGroup::is_zero(const Vec& a) const {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

long long FinAbGroup::order_of(const Vec& a) const {
  long long o = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    long long d = factors[i] / ll_gcd(factors[i], a[i]);
    o = o / ll_gcd(o, d) * d;
  }
  return o;
}

std::vector<Vec> FinAbGroup::elements(std::size_t cap) const {
  if (order() > Int(cap))
    throw CapExceeded("element-enumeration",
                      "group of order " + order().str() + " above cap " +
                          std::to_string(cap));
  std::vector<Vec> out;
  Vec cur = zero();
  out.push_back(cur);
  const auto total = static_cast<std::size_t>(order());
  while (out.size() < total) {
    std::size_t i = 0;
    while (i < rank()) {
      if (++cur[i] < factors[i]) break;
      cur[i] = 0;
      ++i;
    }
    out.push_back(cur);
  }
  return out;
}

std::size_t FinAbGroup::index_of(const Vec& a) const {
  std::size_t idx = 0, mult = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx += static_cast<std::size_t>(a[i]) * mult;
    mult *= static_cast<std::size_t>(factors[i]);
  }
  return idx;
}

Vec FinAbGroup::element_at(std::size_t idx) const {
  Vec v(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    v[i] = static_cast<long long>(idx % static_cast<std::size_t>(factors[i]));
    idx /= static_cast<std::size_t>(factors[i]);
  }
  return v;
}

std::string FinAbGroup::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(factors[i]);
  }
  return s + "]";
}

Vec GroupHom::apply(const Vec& v) const {
  Vec out(codomain.rank(), 0);
  for (std::size_t i = 0; i < codomain.rank(); ++i) {
    long long acc = 0;
    long long m = codomain.factors[i];
    for (std::size_t j = 0; j < domain.rank(); ++j)
      acc = (acc + (matrix[i][j] % m) * (v[j] % m)) % m;
    out[i] = ((acc % m) + m) % m;
  }
  return out;
}

bool GroupHom::well_defined() const {
  if (matrix.size() != codomain.rank()) return false;
  for (const auto& row : matrix)
    if (row.size() != domain.rank()) return false;
  for (std::size_t j = 0; j < domain.rank(); ++j)
    for (std::size_t i = 0; i < codomain.rank(); ++i)
      if ((static_cast<Int>(domain.factors[j]) * matrix[i][j]) %
              codomain.factors[i] !=
          0)
        return false;
  return true;
}

bool GroupHom::is_injective(std::size_t cap) const {
  (void)cap;
  return kernel(*this).order() == 1;
}

bool GroupHom::is_identity() const {
  if (!(domain == codomain)) return false;
  for (std::size_t i = 0; i < codomain.rank(); ++i)
    for (std::size_t j = 0; j < domain.rank(); ++j) {
      long long want = i == j ? 1 : 0;
      long long got = ((matrix[i][j] % codomain.factors[i]) + codomain.factors[i]) %
                      codomain.factors[i];
      if (got != want) return false;
    }
  return true;
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (!(inner.codomain == domain))
    throw std::invalid_argument("hom composition mismatch");
  GroupHom out;
  out.domain = inner.domain;
  out.codomain = codomain;
  out.matrix.assign(codomain.rank(), Vec(inner.domain.rank(), 0));
  for (std::size_t i = 0; i < codomain.rank(); ++i) {
    long long m = codomain.factors[i];
    for (std::size_t j = 0; j < inner.domain.rank(); ++j) {
      long long acc = 0;
      for (std::size_t t = 0; t < domain.rank(); ++t)
        acc = (acc + (matrix[i][t] % m) * (inner.matrix[t][j] % m)) % m;
      out.matrix[i][j] = ((acc % m) + m) % m;
    }
  }
  return out;
}

bool GroupHom::operator==(const GroupHom& o) const {
  if (!(domain == o.domain) || !(codomain == o.codomain)) return false;
  for (std::size_t i = 0; i < codomain.rank(); ++i)
    for (std::size_t j = 0; j < domain.rank(); ++j) {
      long long m = codomain.factors[i];
      if (((matrix[i][j] - o.matrix[i][j]) % m + m) % m != 0) return false;
    }
  return true;
}

GroupHom identity_hom(const FinAbGroup& g) {
  GroupHom h;
  h.domain = h.codomain = g;
  h.matrix.assign(g.rank(), Vec(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) h.matrix[i][i] = 1;
  return h;
}

GroupHom zero_hom(const FinAbGroup& domain, const FinAbGroup& codomain) {
  GroupHom h;
  h.domain = domain;
  h.codomain = codomain;
  h.matrix.assign(codomain.rank(), Vec(domain.rank(), 0));
  return h;
}

Int Subgroup::order() const {
  Int o = 1;
  for (long long d : invariants) o *= d;
  return o;
}

bool Subgroup::contains(const Vec& v) const {
  IVec x(v.begin(), v.end());
  return hnf_contains(lattice_hnf, x);
}

std::vector<Vec> Subgroup::elements(std::size_t cap) const {
  if (order() > Int(cap))
    throw CapExceeded("subgroup-enumeration",
                      "subgroup of order " + order().str() + " above cap " +
                          std::to_string(cap));
  std::vector<Vec> out{ambient.zero()};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    std::vector<Vec> next;
    next.reserve(out.size() * static_cast<std::size_t>(invariants[j]));
    Vec step = ambient.zero();
    for (long long c = 0; c < invariants[j]; ++c) {
      for (const auto& e : out) next.push_back(ambient.add(e, step));
      step = ambient.add(step, basis[j]);
    }
    out = std::move(next);
  }
  return out;
}

Subgroup subgroup_from_generators(const FinAbGroup& ambient,
                                  const std::vector<Vec>& gens) {
  const std::size_t k = ambient.rank();
  IMat rows;
  for (const auto& g : gens) {
    if (g.size() != k)
      throw std::invalid_argument("subgroup generator has wrong length");
    rows.push_back(IVec(g.begin(), g.end()));
  }
  for (std::size_t i = 0; i < k; ++i) {
    IVec d(k, 0);
    d[i] = ambient.factors[i];
    rows.push_back(std::move(d));
  }
  Subgroup s;
  s.ambient = ambient;
  if (k == 0) return s;
  s.lattice_hnf = hnf_rows(rows);
  IMat diag(k, IVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) diag[i][i] = ambient.factors[i];
  QuotientStructure q = lattice_quotient(s.lattice_hnf, diag);
  for (std::size_t j = 0; j < q.factors.size(); ++j) {
    s.invariants.push_back(static_cast<long long>(q.factors[j]));
    Vec b(k);
    for (std::size_t c = 0; c < k; ++c) {
      Int r = q.basis[j][c] % ambient.factors[c];
      if (r < 0) r += ambient.factors[c];
      b[c] = static_cast<long long>(r);
    }
    s.basis.push_back(ambient.reduce(b));
  }
  // Invariant-factor order: smallest first.
  std::vector<std::size_t> idx(s.invariants.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return s.invariants[a] < s.invariants[b];
  });
  std::vector<long long> inv;
  std::vector<Vec> bas;
  for (std::size_t i : idx) {
    inv.push_back(s.invariants[i]);
    bas.push_back(s.basis[i]);
  }
  s.invariants = std::move(inv);
  s.basis = std::move(bas);
  return s;
}

Subgroup full_subgroup(const FinAbGroup& ambient) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < ambient.rank(); ++i) {
    Vec e = ambient.zero();
    e[i] = 1;
    gens.push_back(e);
  }
  return subgroup_from_generators(ambient, gens);
}

Subgroup trivial_subgroup(const FinAbGroup& ambient) {
  return subgroup_from_generators(ambient, {});
}

QuotientGroup subgroup_quotient(const Subgroup& big, const Subgroup& small) {
  if (!(big.ambient == small.ambient))
    throw std::invalid_argument("subgroup_quotient: ambient mismatch");
  QuotientGroup out;
  if (big.ambient.rank() == 0) return out;
  QuotientStructure q = lattice_quotient(big.lattice_hnf, small.lattice_hnf);
  for (std::size_t j = 0; j < q.factors.size(); ++j) {
    out.invariants.push_back(static_cast<long long>(q.factors[j]));
    Vec b(big.ambient.rank());
    for (std::size_t c = 0; c < b.size(); ++c) {
      Int r = q.basis[j][c] % big.ambient.factors[c];
      if (r < 0) r += big.ambient.factors[c];
      b[c] = static_cast<long long>(r);
    }
    out.reps.push_back(big.ambient.reduce(b));
  }
  return out;
}

Int hom_group_order(const FinAbGroup& a, const FinAbGroup& b) {
  Int o = 1;
  for (long long d : a.factors)
    for (long long e : b.factors) o *= ll_gcd(d, e);
  return o;
}

HomGroup hom_group(const FinAbGroup& a, const FinAbGroup& b, std::size_t cap) {
  Int total = hom_group_order(a, b);
  if (total > Int(cap))
    throw CapExceeded("hom-enumeration", "|Hom| = " + total.str() +
                                             " above cap " + std::to_string(cap));
  HomGroup out;
  std::vector<long long> cyclic;
  // Entry (i,j) ranges over multiples of e_i/gcd(d_j, e_i): gcd(d_j, e_i)
  // choices; that is exactly the well-definedness constraint.
  struct Slot {
    std::size_t i, j;
    long long count, step;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) {
      long long g = ll_gcd(a.factors[j], b.factors[i]);
      slots.push_back({i, j, g, b.factors[i] / g});
      cyclic.push_back(g);
    }
  out.structure = FinAbGroup::from_cyclic_orders(cyclic);
  std::vector<long long> counter(slots.size(), 0);
  for (;;) {
    GroupHom h = zero_hom(a, b);
    for (std::size_t s = 0; s < slots.size(); ++s)
      h.matrix[slots[s].i][slots[s].j] =
          (counter[s] * slots[s].step) % b.factors[slots[s].i];
    out.elements.push_back(std::move(h));
    std::size_t s = 0;
    while (s < slots.size()) {
      if (++counter[s] < slots[s].count) break;
      counter[s] = 0;
      ++s;
    }
    if (s == slots.size()) break;
  }
  return out;
}

std::vector<GroupHom> aut_group(const FinAbGroup& a, std::size_t cap) {
  if (a.order() > Int(cap))
    throw CapExceeded("aut-enumeration", "|A| = " + a.order().str() +
                                             " above cap " + std::to_string(cap));
  std::vector<GroupHom> out;
  const auto elems = a.elements();
  HomGroup homs = hom_group(a, a, cap * cap);
  for (auto& h : homs.elements) {
    std::vector<bool> hit(elems.size(), false);
    bool bij = true;
    for (const auto& e : elems) {
      std::size_t img = a.index_of(h.apply(e));
      if (hit[img]) {
        bij = false;
        break;
      }
      hit[img] = true;
    }
    if (bij) out.push_back(std::move(h));
  }
  return out;
}

Subgroup kernel(const GroupHom& h) {
  const std::size_t vars = h.domain.rank();
  const std::size_t rows = h.codomain.rank();
  IMat sys(rows, IVec(vars, 0));
  std::vector<Int> eq_mod(rows), var_mod(vars);
  for (std::size_t i = 0; i < rows; ++i) {
    eq_mod[i] = h.codomain.factors[i];
    for (std::size_t j = 0; j < vars; ++j) sys[i][j] = h.matrix[i][j];
  }
  for (std::size_t j = 0; j < vars; ++j) var_mod[j] = h.domain.factors[j];
  IMat gens = congruence_kernel(sys, eq_mod, var_mod);
  std::vector<Vec> gv;
  for (const auto& r : gens) {
    Vec v(vars);
    for (std::size_t j = 0; j < vars; ++j) v[j] = static_cast<long long>(r[j]);
    gv.push_back(h.domain.reduce(v));
  }
  return subgroup_from_generators(h.domain, gv);
}

Subgroup annihilator(const Subgroup& n_in_dual, const FinAbGroup& t) {
  if (!(n_in_dual.ambient == t))
    throw std::invalid_argument(
        "annihilator: N must live in the character group of T "
        "(same invariant factors)");
  // <z, x> = sum_i z_i x_i (L/d_i) / L in (1/L)Z/Z, L = exponent(T).
  const long long big_l = t.exponent();
  const std::size_t k = t.rank();
  IMat sys;
  std::vector<Int> eq_mod;
  for (const auto& z : n_in_dual.basis) {
    IVec row(k);
    for (std::size_t i = 0; i < k; ++i)
      row[i] = Int(z[i]) * (big_l / t.factors[i]);
    sys.push_back(std::move(row));
    eq_mod.push_back(big_l);
  }
  std::vector<Int> var_mod(t.factors.begin(), t.factors.end());
  IMat gens = congruence_kernel(sys, eq_mod, var_mod);
  std::vector<Vec> gv;
  for (const auto& r : gens) {
    Vec v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = static_cast<long long>(r[j]);
    gv.push_back(t.reduce(v));
  }
  return subgroup_from_generators(t, gv);
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<long long> all(a.factors);
  all.insert(all.end(), b.factors.begin(), b.factors.end());
  return FinAbGroup::from_cyclic_orders(all);
}

FinAbGroup invariants_from_element_orders(const std::vector<long long>& orders) {
  const long long n = static_cast<long long>(orders.size());
  if (n == 0) throw std::invalid_argument("empty order list");
  // Per prime p: #{x : x^(p^t) = 1} = p^(sum_i min(lambda_i, t)) pins down
  // the partition lambda of the p-part.
  std::vector<std::vector<long long>> prime_parts;  // p^(lambda_i) per prime
  long long rest = n;
  for (long long p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    std::vector<long long> m{0};  // m[t] = log_p #{x : ord(x) | p^t}
    for (long long t = 1;; ++t) {
      long long pt = 1;
      for (long long i = 0; i < t; ++i) pt *= p;
      long long count = 0;
      for (long long o : orders)
        if (pt % o == 0) ++count;
      long long logc = 0, c = count;
      while (c > 1) {
        if (c % p != 0) throw std::invalid_argument("order counts not a p-power");
        c /= p;
        ++logc;
      }
      m.push_back(logc);
      if (m[t] == m[t - 1]) break;
    }
    std::vector<long long> a;  // a[t] = #{i : lambda_i >= t}
    for (std::size_t t = 1; t < m.size(); ++t)
      if (m[t] > m[t - 1]) a.push_back(m[t] - m[t - 1]);
    if (a.empty()) continue;
    std::vector<long long> lambda;  // conjugate partition
    for (long long i = 1; i <= a[0]; ++i) {
      long long cnt = 0;
      for (long long at : a)
        if (at >= i) ++cnt;
      long long pk = 1;
      for (long long t = 0; t < cnt; ++t) pk *= p;
      lambda.push_back(pk);
    }
    std::sort(lambda.begin(), lambda.end());
    prime_parts.push_back(std::move(lambda));
  }
  std::size_t width = 0;
  for (const auto& pp : prime_parts) width = std::max(width, pp.size());
  std::vector<long long> factors;
  for (std::size_t j = 0; j < width; ++j) {
    long long d = 1;
    for (const auto& pp : prime_parts) {
      std::size_t off = width - pp.size();
      if (j >= off) d *= pp[j - off];
    }
    factors.push_back(d);
  }
  return FinAbGroup::from_cyclic_orders(factors);
}

}  // namespace qsub::finab
