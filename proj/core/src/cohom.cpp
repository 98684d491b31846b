#include "qsub/cohom.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qsub::cohom {

int FiniteGroup::element_order(int x) const {
  int o = 1, cur = x;
  while (cur != identity) {
    cur = mul(cur, x);
    ++o;
    if (o > order) throw std::logic_error("element order exceeds group order");
  }
  return o;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order; ++x)
    for (int y = x + 1; y < order; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

FiniteGroup FiniteGroup::from_table(std::vector<int> table, int order) {
  if (order <= 0 || static_cast<int>(table.size()) != order * order)
    throw std::invalid_argument("multiplication table has wrong size");
  for (int v : table)
    if (v < 0 || v >= order)
      throw std::invalid_argument("table entry out of range");
  FiniteGroup g;
  g.order = order;
  g.table = std::move(table);
  // Identity: two-sided.
  g.identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x)
      ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw std::invalid_argument("table has no identity");
  g.inverse.assign(order, -1);
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y)
      if (g.mul(x, y) == g.identity && g.mul(y, x) == g.identity) {
        g.inverse[x] = y;
        break;
      }
    if (g.inverse[x] < 0) throw std::invalid_argument("element has no inverse");
  }
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      for (int z = 0; z < order; ++z)
        if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
          throw std::invalid_argument("table is not associative");
  return g;
}

FiniteGroup FiniteGroup::cyclic(int k) {
  if (k < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  std::vector<int> t(k * k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) t[x * k + y] = (x + y) % k;
  return from_table(std::move(t), k);
}

FiniteGroup FiniteGroup::dihedral(int k) {
  if (k < 1) throw std::invalid_argument("dihedral parameter must be >= 1");
  const int n = 2 * k;
  // Elements: r^a (index a), r^a s (index k + a); s r = r^{-1} s.
  auto idx = [&](int flip, int a) { return flip * k + ((a % k) + k) % k; };
  std::vector<int> t(n * n);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int a1 = 0; a1 < k; ++a1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int a2 = 0; a2 < k; ++a2) {
          // (r^a1 s^f1)(r^a2 s^f2) = r^(a1 + (-1)^f1 a2) s^(f1+f2)
          int a = f1 ? a1 - a2 : a1 + a2;
          t[idx(f1, a1) * n + idx(f2, a2)] = idx((f1 + f2) % 2, a);
        }
  return from_table(std::move(t), n);
}

FiniteGroup FiniteGroup::from_abelian(const FinAbGroup& a) {
  auto elems = a.elements();
  const int n = static_cast<int>(elems.size());
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x * n + y] =
          static_cast<int>(a.index_of(a.add(elems[x], elems[y])));
  return from_table(std::move(t), n);
}

std::vector<int> FiniteGroup::generating_set() const {
  std::vector<int> gens;
  std::vector<bool> in_span(order, false);
  in_span[identity] = true;
  int span_size = 1;
  auto close = [&](int g) {
    std::vector<int> queue;
    if (!in_span[g]) {
      in_span[g] = true;
      ++span_size;
      queue.push_back(g);
    }
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (int x = 0; x < order; ++x)
        if (in_span[x]) {
          for (int p : {mul(queue[h], x), mul(x, queue[h])})
            if (!in_span[p]) {
              in_span[p] = true;
              ++span_size;
              queue.push_back(p);
            }
        }
  };
  for (int x = 0; x < order && span_size < order; ++x) {
    if (in_span[x]) continue;
    gens.push_back(x);
    close(x);
  }
  return gens;
}

std::vector<std::vector<int>> all_isomorphisms(const FiniteGroup& a,
                                               const FiniteGroup& b,
                                               std::size_t cap) {
  std::vector<std::vector<int>> out;
  if (a.order != b.order) return out;
  const std::vector<int> gens = a.generating_set();
  // Express every element of a as a word in the generators.
  std::vector<std::vector<int>> word(a.order);
  std::vector<bool> seen(a.order, false);
  seen[a.identity] = true;
  std::vector<int> queue{a.identity};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int nxt = a.mul(queue[h], gens[gi]);
      if (!seen[nxt]) {
        seen[nxt] = true;
        word[nxt] = word[queue[h]];
        word[nxt].push_back(static_cast<int>(gi));
        queue.push_back(nxt);
      }
    }
  double budget = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) budget *= b.order;
  if (budget > static_cast<double>(cap))
    throw CapExceeded("isomorphism-search",
                      "candidate image tuples exceed cap");

  std::vector<int> img(gens.size(), 0);
  auto build = [&]() -> bool {
    std::vector<int> phi(a.order);
    for (int x = 0; x < a.order; ++x) {
      int acc = b.identity;
      for (int gi : word[x]) acc = b.mul(acc, img[gi]);
      phi[x] = acc;
    }
    std::vector<bool> hit(b.order, false);
    for (int v : phi) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    for (int x = 0; x < a.order; ++x)
      for (int y = 0; y < a.order; ++y)
        if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) return false;
    out.push_back(std::move(phi));
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) {
      build();
      return;
    }
    int want = a.element_order(gens[i]);
    for (int cand = 0; cand < b.order; ++cand) {
      if (b.element_order(cand) != want) continue;
      img[i] = cand;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::vector<int>> automorphisms(const FiniteGroup& g,
                                            std::size_t cap) {
  return all_isomorphisms(g, g, cap);
}

Abelianization abelianize(const FiniteGroup& g) {
  // Derived subgroup: closure of all commutators.
  std::vector<bool> in_d(g.order, false);
  std::vector<int> queue;
  auto push = [&](int x) {
    if (!in_d[x]) {
      in_d[x] = true;
      queue.push_back(x);
    }
  };
  push(g.identity);
  for (int x = 0; x < g.order; ++x)
    for (int y = 0; y < g.order; ++y)
      push(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t k = 0; k < queue.size(); ++k) push(g.mul(queue[h], queue[k]));

  // Cosets xD; the quotient is abelian.
  std::vector<int> coset_rep(g.order, -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order; ++x) {
    if (coset_rep[x] >= 0) continue;
    for (int d = 0; d < g.order; ++d)
      if (in_d[d]) coset_rep[g.mul(x, d)] = x;
    reps.push_back(x);
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> rep_index(g.order, -1);
  for (int i = 0; i < q; ++i) rep_index[reps[i]] = i;
  auto qmul = [&](int i, int j) {
    return rep_index[coset_rep[g.mul(reps[i], reps[j])]];
  };
  int qid = rep_index[coset_rep[g.identity]];

  // Greedy generators of the quotient plus a BFS with coefficient tracking;
  // collision edges span the full relation lattice.
  std::vector<int> qgens;
  {
    std::vector<bool> span(q, false);
    span[qid] = true;
    int size = 1;
    for (int x = 0; x < q && size < q; ++x) {
      if (span[x]) continue;
      qgens.push_back(x);
      std::vector<int> bump{x};
      if (!span[x]) {
        span[x] = true;
        ++size;
      }
      for (std::size_t h = 0; h < bump.size(); ++h)
        for (int y = 0; y < q; ++y)
          if (span[y]) {
            int p = qmul(bump[h], y);
            if (!span[p]) {
              span[p] = true;
              ++size;
              bump.push_back(p);
            }
          }
    }
  }
  const std::size_t r = qgens.size();
  std::vector<std::vector<long long>> coef(q);
  std::vector<bool> seen(q, false);
  seen[qid] = true;
  coef[qid].assign(r, 0);
  std::vector<int> bfs{qid};
  IMat relations;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (std::size_t gi = 0; gi < r; ++gi) {
      int nxt = qmul(bfs[h], qgens[gi]);
      std::vector<long long> c = coef[bfs[h]];
      c[gi] += 1;
      if (!seen[nxt]) {
        seen[nxt] = true;
        coef[nxt] = c;
        bfs.push_back(nxt);
      } else {
        IVec rel(r);
        for (std::size_t t = 0; t < r; ++t) rel[t] = c[t] - coef[nxt][t];
        relations.push_back(std::move(rel));
      }
    }

  Abelianization out;
  if (r == 0) {
    out.group = FinAbGroup{};
    out.proj.assign(g.order, Vec{});
    return out;
  }
  SmithResult sm = smith_normal_form(relations);
  // Generators h with g = V h; element with g-coefficients c has
  // h-coordinates V^T c, modulo the Smith diagonal.
  std::vector<long long> diag;
  for (std::size_t j = 0; j < r; ++j) {
    Int d = j < sm.d.size() && j < sm.d[j].size() ? sm.d[j][j] : Int(0);
    if (d == 0)
      throw std::logic_error("abelianization: relation lattice not full rank");
    diag.push_back(static_cast<long long>(d));
  }
  std::vector<std::size_t> keep;
  std::vector<long long> factors;
  for (std::size_t j = 0; j < r; ++j)
    if (diag[j] > 1) {
      keep.push_back(j);
      factors.push_back(diag[j]);
    }
  out.group = FinAbGroup::from_factors(factors);
  out.proj.assign(g.order, Vec(keep.size(), 0));
  for (int x = 0; x < g.order; ++x) {
    const auto& c = coef[rep_index[coset_rep[x]]];
    for (std::size_t t = 0; t < keep.size(); ++t) {
      std::size_t j = keep[t];
      Int acc = 0;
      for (std::size_t i = 0; i < r; ++i) acc += sm.v[i][j] * c[i];
      Int m = factors[t];
      acc %= m;
      if (acc < 0) acc += m;
      out.proj[x][t] = static_cast<long long>(acc);
    }
  }
  return out;
}

Vec GammaModule::act(int x, const Vec& m) const {
  const auto& a = action[x];
  Vec out(mod.rank(), 0);
  for (std::size_t i = 0; i < mod.rank(); ++i) {
    long long mm = mod.factors[i];
    long long acc = 0;
    for (std::size_t j = 0; j < mod.rank(); ++j)
      acc = (acc + (a[i][j] % mm) * (m[j] % mm)) % mm;
    out[i] = ((acc % mm) + mm) % mm;
  }
  return out;
}

GammaModule GammaModule::trivial(const FiniteGroup& gamma, const FinAbGroup& mod) {
  LMat id(mod.rank(), Vec(mod.rank(), 0));
  for (std::size_t i = 0; i < mod.rank(); ++i) id[i][i] = 1;
  std::vector<LMat> act(gamma.order, id);
  return from_matrices(gamma, mod, std::move(act));
}

GammaModule GammaModule::from_matrices(const FiniteGroup& gamma,
                                       const FinAbGroup& mod,
                                       std::vector<LMat> action) {
  if (static_cast<int>(action.size()) != gamma.order)
    throw std::invalid_argument("need one action matrix per group element");
  GammaModule m;
  m.gamma = gamma;
  m.mod = mod;
  m.action = std::move(action);
  auto as_hom = [&](const LMat& a) {
    finab::GroupHom h;
    h.domain = h.codomain = mod;
    h.matrix = a;
    return h;
  };
  for (int x = 0; x < gamma.order; ++x) {
    finab::GroupHom h = as_hom(m.action[x]);
    if (!h.well_defined())
      throw std::invalid_argument("action matrix does not respect relations");
    if (finab::kernel(h).order() != 1)
      throw std::invalid_argument("action matrix is not an automorphism");
  }
  // Right action: A_{xy} = A_y A_x.
  finab::GroupHom id = finab::identity_hom(mod);
  if (!(as_hom(m.action[gamma.identity]) == id))
    throw std::invalid_argument("identity must act trivially");
  for (int x = 0; x < gamma.order; ++x)
    for (int y = 0; y < gamma.order; ++y) {
      finab::GroupHom lhs = as_hom(m.action[gamma.mul(x, y)]);
      finab::GroupHom rhs = as_hom(m.action[y]).compose(as_hom(m.action[x]));
      if (!(lhs == rhs))
        throw std::invalid_argument("action is not a right action");
    }
  return m;
}

Cochain1 zero_cochain(const GammaModule& m) {
  Cochain1 c;
  c.values.assign(m.gamma.order, m.mod.zero());
  return c;
}

Cochain1 d0(const Vec& g, const GammaModule& m) {
  Cochain1 c;
  c.values.reserve(m.gamma.order);
  for (int x = 0; x < m.gamma.order; ++x)
    c.values.push_back(m.mod.add(m.act(x, g), m.mod.neg(g)));
  return c;
}

Cochain2 d1(const Cochain1& v, const GammaModule& m) {
  Cochain2 out;
  out.values.reserve(static_cast<std::size_t>(m.gamma.order) * m.gamma.order);
  for (int x = 0; x < m.gamma.order; ++x)
    for (int y = 0; y < m.gamma.order; ++y) {
      Vec t = m.mod.add(m.act(y, v.values[x]), v.values[y]);
      out.values.push_back(
          m.mod.add(t, m.mod.neg(v.values[m.gamma.mul(x, y)])));
    }
  return out;
}

bool is_cocycle(const Cochain1& v, const GammaModule& m) {
  Cochain2 t = d1(v, m);
  return std::all_of(t.values.begin(), t.values.end(),
                     [&](const Vec& w) { return m.mod.is_zero(w); });
}

bool is_coboundary(const Cochain1& v, const GammaModule& m, std::size_t cap) {
  (void)cap;
  // Solve (A_x - 1) g = v(x) for all x simultaneously.
  const std::size_t k = m.mod.rank();
  IMat sys;
  std::vector<Int> eq_mod;
  IVec rhs;
  for (int x = 0; x < m.gamma.order; ++x)
    for (std::size_t i = 0; i < k; ++i) {
      IVec row(k);
      for (std::size_t j = 0; j < k; ++j)
        row[j] = Int(m.action[x][i][j]) - (i == j ? 1 : 0);
      sys.push_back(std::move(row));
      eq_mod.push_back(m.mod.factors[i]);
      rhs.push_back(v.values[x][i]);
    }
  std::vector<Int> var_mod(m.mod.factors.begin(), m.mod.factors.end());
  return solve_congruence(sys, eq_mod, var_mod, rhs).has_value();
}

Cochain1 twisted_act(const Vec& g, const Cochain1& v, const GammaModule& m) {
  Cochain1 out;
  out.values.reserve(m.gamma.order);
  for (int x = 0; x < m.gamma.order; ++x)
    out.values.push_back(
        m.mod.add(m.act(x, g), m.mod.add(v.values[x], m.mod.neg(g))));
  return out;
}

namespace {

std::vector<long long> h1_class_orders(const std::vector<Cochain1>& reps,
                                       const std::set<Cochain1>& b1set,
                                       const GammaModule& m) {
  std::vector<long long> orders;
  long long expn = m.mod.exponent();
  for (const auto& rep : reps) {
    long long t = 1;
    for (; t <= expn; ++t) {
      Cochain1 scaled;
      scaled.values.reserve(rep.values.size());
      for (const auto& val : rep.values)
        scaled.values.push_back(m.mod.scale(t, val));
      if (b1set.count(scaled)) break;
    }
    orders.push_back(t);
  }
  return orders;
}

}  // namespace

H1Result h1_enumeration(const GammaModule& m, std::size_t cap) {
  const int n = m.gamma.order;
  Int space = 1;
  for (int i = 1; i < n; ++i) space *= m.mod.order();
  if (space > Int(cap))
    throw CapExceeded("h1-enumeration",
                      "cochain space of size " + space.str() + " above cap " +
                          std::to_string(cap) +
                          "; use the linear path or the torsion reduction");
  H1Result res;
  res.path = "enumeration";
  const auto elems = m.mod.elements();
  // Walk all maps with v(identity) = 0.
  std::vector<std::size_t> counter(n, 0);
  std::vector<int> free_pos;
  for (int x = 0; x < n; ++x)
    if (x != m.gamma.identity) free_pos.push_back(x);
  for (;;) {
    Cochain1 v;
    v.values.assign(n, m.mod.zero());
    for (int x : free_pos) v.values[x] = elems[counter[x]];
    if (is_cocycle(v, m)) res.z1.push_back(v);
    std::size_t i = 0;
    for (; i < free_pos.size(); ++i) {
      if (++counter[free_pos[i]] < elems.size()) break;
      counter[free_pos[i]] = 0;
    }
    if (i == free_pos.size()) break;
  }
  std::sort(res.z1.begin(), res.z1.end());
  std::set<Cochain1> b1set;
  for (const auto& e : elems) b1set.insert(d0(e, m));
  res.b1.assign(b1set.begin(), b1set.end());
  res.z1_order = res.z1.size();
  res.b1_order = res.b1.size();
  // Lexicographically least representative per coset of B1.
  std::set<Cochain1> covered;
  for (const auto& v : res.z1) {
    if (covered.count(v)) continue;
    res.h1_reps.push_back(v);
    for (const auto& b : res.b1) {
      Cochain1 shifted;
      shifted.values.reserve(v.values.size());
      for (std::size_t x = 0; x < v.values.size(); ++x)
        shifted.values.push_back(m.mod.add(v.values[x], b.values[x]));
      covered.insert(std::move(shifted));
    }
  }
  res.h1_order = res.h1_reps.size();
  if (res.h1_order > 1) {
    auto orders = h1_class_orders(res.h1_reps, b1set, m);
    res.h1_invariants = finab::invariants_from_element_orders(orders).factors;
  }
  return res;
}

H1Result h1_linear(const GammaModule& m, std::size_t rep_cap) {
  H1Result res;
  res.path = "linear";
  const int n = m.gamma.order;
  const std::size_t k = m.mod.rank();
  const std::vector<int> gens = m.gamma.generating_set();
  const std::size_t vars = gens.size() * k;

  if (k == 0 || gens.empty()) {
    // Trivial module or trivial group: everything is zero.
    res.z1.push_back(zero_cochain(m));
    res.b1 = res.z1;
    res.h1_reps = res.z1;
    return res;
  }

  // Linear form per element: v(x)_i = sum_t L[x][i][t] z_t (mod factor_i).
  std::vector<std::vector<Vec>> lf(
      n, std::vector<Vec>(k, Vec(vars, 0)));
  std::vector<bool> seen(n, false);
  std::vector<int> bfs{m.gamma.identity};
  seen[m.gamma.identity] = true;
  IMat sys;
  std::vector<Int> eq_mod;
  auto extended = [&](int x, std::size_t gi) {
    // A_s * L[x] + E_s
    const int s = gens[gi];
    std::vector<Vec> out(k, Vec(vars, 0));
    for (std::size_t i = 0; i < k; ++i) {
      long long mm = m.mod.factors[i];
      for (std::size_t t = 0; t < vars; ++t) {
        long long acc = 0;
        for (std::size_t j = 0; j < k; ++j)
          acc = (acc + (m.action[s][i][j] % mm) * (lf[x][j][t] % mm)) % mm;
        out[i][t] = ((acc % mm) + mm) % mm;
      }
      out[i][gi * k + i] = (out[i][gi * k + i] + 1) % mm;
    }
    return out;
  };
  for (std::size_t h = 0; h < bfs.size(); ++h) {
    int x = bfs[h];
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      int nxt = m.gamma.mul(x, gens[gi]);
      auto form = extended(x, gi);
      if (!seen[nxt]) {
        seen[nxt] = true;
        lf[nxt] = std::move(form);
        bfs.push_back(nxt);
      } else {
        for (std::size_t i = 0; i < k; ++i) {
          IVec row(vars);
          bool nonzero = false;
          for (std::size_t t = 0; t < vars; ++t) {
            row[t] = form[i][t] - lf[nxt][i][t];
            if (row[t] != 0) nonzero = true;
          }
          if (nonzero) {
            sys.push_back(std::move(row));
            eq_mod.push_back(m.mod.factors[i]);
          }
        }
      }
    }
  }
  std::vector<Int> var_mod;
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t i = 0; i < k; ++i) var_mod.push_back(m.mod.factors[i]);

  IMat z1_gens = congruence_kernel(sys, eq_mod, var_mod);
  IMat b1_rows;
  for (std::size_t j = 0; j < k; ++j) {
    Vec e = m.mod.zero();
    e[j] = 1;
    Cochain1 cb = d0(e, m);
    IVec row(vars);
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
      for (std::size_t i = 0; i < k; ++i)
        row[gi * k + i] = cb.values[gens[gi]][i];
    b1_rows.push_back(std::move(row));
  }
  IMat mod_lattice(vars, IVec(vars, 0));
  for (std::size_t i = 0; i < vars; ++i) mod_lattice[i][i] = var_mod[i];
  IMat z_lat = z1_gens;
  for (const auto& r : mod_lattice) z_lat.push_back(r);
  IMat b_lat = b1_rows;
  for (const auto& r : mod_lattice) b_lat.push_back(r);
  IMat hz = hnf_rows(z_lat), hb = hnf_rows(b_lat);

  Int box = 1;
  for (const auto& v : var_mod) box *= v;
  auto lattice_order = [&](const IMat& h) {
    Int det = 1;
    for (std::size_t i = 0; i < h.size(); ++i) det *= h[i][i];
    return box / det;
  };
  res.z1_order = lattice_order(hz);
  res.b1_order = lattice_order(hb);
  res.h1_order = res.z1_order / res.b1_order;

  QuotientStructure q = lattice_quotient(hz, hb);
  for (const auto& f : q.factors)
    res.h1_invariants.push_back(static_cast<long long>(f));
  std::sort(res.h1_invariants.begin(), res.h1_invariants.end());

  // Reconstruct a full cochain from generator values.
  auto to_cochain = [&](const IVec& genvals) {
    Cochain1 v;
    v.values.assign(n, m.mod.zero());
    for (int x = 0; x < n; ++x)
      for (std::size_t i = 0; i < k; ++i) {
        long long mm = m.mod.factors[i];
        Int acc = 0;
        for (std::size_t t = 0; t < vars; ++t) acc += Int(lf[x][i][t]) * genvals[t];
        acc %= mm;
        if (acc < 0) acc += mm;
        v.values[x][i] = static_cast<long long>(acc);
      }
    return v;
  };
  if (res.h1_order <= Int(rep_cap)) {
    std::vector<IVec> reps{IVec(vars, 0)};
    for (std::size_t j = 0; j < q.factors.size(); ++j) {
      std::vector<IVec> next;
      long long f = static_cast<long long>(q.factors[j]);
      for (long long c = 0; c < f; ++c)
        for (const auto& base : reps) {
          IVec r = base;
          for (std::size_t t = 0; t < vars; ++t) r[t] += c * q.basis[j][t];
          next.push_back(std::move(r));
        }
      reps = std::move(next);
    }
    for (const auto& r : reps) res.h1_reps.push_back(to_cochain(r));
    std::sort(res.h1_reps.begin(), res.h1_reps.end());
  }
  if (res.z1_order <= Int(rep_cap)) {
    QuotientStructure zq = lattice_quotient(hz, mod_lattice);
    std::vector<IVec> all{IVec(vars, 0)};
    for (std::size_t j = 0; j < zq.factors.size(); ++j) {
      std::vector<IVec> next;
      long long f = static_cast<long long>(zq.factors[j]);
      for (long long c = 0; c < f; ++c)
        for (const auto& base : all) {
          IVec r = base;
          for (std::size_t t = 0; t < vars; ++t) r[t] += c * zq.basis[j][t];
          next.push_back(std::move(r));
        }
      all = std::move(next);
    }
    for (const auto& r : all) res.z1.push_back(to_cochain(r));
    std::sort(res.z1.begin(), res.z1.end());
    res.z1.erase(std::unique(res.z1.begin(), res.z1.end()), res.z1.end());
  }
  if (res.b1_order <= Int(rep_cap)) {
    std::set<Cochain1> b1set;
    for (const auto& e : m.mod.elements()) b1set.insert(d0(e, m));
    res.b1.assign(b1set.begin(), b1set.end());
  }
  return res;
}

H1Result h1(const GammaModule& m, std::size_t cap) {
  Int space = 1;
  for (int i = 1; i < m.gamma.order; ++i) space *= m.mod.order();
  if (space <= Int(std::min<std::size_t>(cap, 200'000)))
    return h1_enumeration(m, cap);
  return h1_linear(m);
}

long long class_order(const Cochain1& v, const GammaModule& m,
                      const H1Result& res) {
  (void)res;
  long long expn = m.mod.exponent();
  for (long long t = 1; t <= expn; ++t) {
    Cochain1 scaled;
    scaled.values.reserve(v.values.size());
    for (const auto& val : v.values) scaled.values.push_back(m.mod.scale(t, val));
    if (is_coboundary(scaled, m)) return t;
  }
  throw std::logic_error("class order not found below the module exponent");
}

GammaModule torsion_level_module(const FiniteGroup& gamma, int torus_rank,
                                 const std::vector<LMat>& action_on_lattice,
                                 long long level) {
  if (level < 2) throw std::invalid_argument("torsion level must be >= 2");
  FinAbGroup mod =
      FinAbGroup::from_factors(std::vector<long long>(torus_rank, level));
  std::vector<LMat> act;
  for (const auto& a : action_on_lattice) {
    LMat red(torus_rank, Vec(torus_rank, 0));
    for (int i = 0; i < torus_rank; ++i)
      for (int j = 0; j < torus_rank; ++j)
        red[i][j] = ((a[i][j] % level) + level) % level;
    act.push_back(std::move(red));
  }
  return GammaModule::from_matrices(gamma, mod, std::move(act));
}

TorsionH1 h1_torsion_reduction(const FiniteGroup& gamma, int torus_rank,
                               const std::vector<LMat>& action_on_lattice,
                               long long m_cap) {
  if (static_cast<int>(action_on_lattice.size()) != gamma.order)
    throw std::invalid_argument("need one lattice matrix per group element");
  for (const auto& a : action_on_lattice) {
    IMat ai = imat_from_ll(a);
    Int det = imat_det(ai);
    if (det != 1 && det != -1)
      throw std::invalid_argument(
          "action is not by automorphisms of the lattice mod 1");
  }
  TorsionH1 out;
  out.level = gamma.order;
  if (gamma.order > m_cap)
    throw CapExceeded("torsion-level", "|Gamma| above the configured level cap");
  if (gamma.order == 1) {
    // No nontrivial cochains at all.
    out.at_level.path = "trivial";
    return out;
  }
  GammaModule dm =
      torsion_level_module(gamma, torus_rank, action_on_lattice, gamma.order);
  out.at_level = h1(dm);
  if (out.at_level.h1_reps.empty() && out.at_level.h1_order != 1)
    throw CapExceeded("torsion-reps",
                      "H1 representative list too large for the kernel scan");

  // Divisible-coboundary test: stack the matrices (A_x - 1); a D_m-valued
  // cocycle u is d0 of a torus point iff the non-pivot rows of U*u vanish,
  // U from the Smith form of the stack (solvability over a divisible group).
  const int n = torus_rank;
  IMat stack;
  for (int x = 0; x < gamma.order; ++x)
    for (int i = 0; i < n; ++i) {
      IVec row(n);
      for (int j = 0; j < n; ++j)
        row[j] = Int(action_on_lattice[x][i][j]) - (i == j ? 1 : 0);
      stack.push_back(std::move(row));
    }
  SmithResult sm = smith_normal_form(stack);
  std::size_t rank = 0;
  for (int j = 0; j < n; ++j)
    if (sm.d[j][j] != 0) ++rank;
  auto divisible_coboundary = [&](const Cochain1& u) {
    // u has values in (Z/m)^n; read entry e as e/m in Q/Z.
    std::vector<Rat> w(stack.size(), Rat(0));
    for (std::size_t i = 0; i < stack.size(); ++i) {
      Rat acc(0);
      for (int x = 0; x < gamma.order; ++x)
        for (int j = 0; j < n; ++j) {
          const Int& coeff = sm.u[i][static_cast<std::size_t>(x) * n + j];
          if (coeff != 0)
            acc += Rat(coeff * u.values[x][j], Int(gamma.order));
        }
      w[i] = acc;
    }
    for (std::size_t i = rank; i < stack.size(); ++i)
      if (boost::multiprecision::denominator(w[i]) != 1) return false;
    return true;
  };

  std::vector<bool> dies(out.at_level.h1_reps.size(), false);
  std::size_t kernel_count = 0;
  for (std::size_t i = 0; i < out.at_level.h1_reps.size(); ++i)
    if (divisible_coboundary(out.at_level.h1_reps[i])) {
      dies[i] = true;
      ++kernel_count;
    }
  out.identification_kernel_order = kernel_count == 0 ? 1 : Int(kernel_count);
  if (out.at_level.h1_order % out.identification_kernel_order != 0)
    throw std::logic_error("identification kernel is not a subgroup");
  out.h1_torus_order = out.at_level.h1_order / out.identification_kernel_order;

  // Greedy coset representatives: u ~ u' iff u - u' dies over the torus.
  std::vector<const Cochain1*> chosen;
  for (const auto& rep : out.at_level.h1_reps) {
    bool merged = false;
    for (const auto* c : chosen) {
      Cochain1 diff;
      diff.values.reserve(rep.values.size());
      for (std::size_t x = 0; x < rep.values.size(); ++x)
        diff.values.push_back(dm.mod.add(rep.values[x], dm.mod.neg(c->values[x])));
      // Difference of cocycles is a cocycle; test the divisible coboundary
      // condition allowing a finite-level coboundary too.
      if (divisible_coboundary(diff)) {
        merged = true;
        break;
      }
    }
    if (!merged) {
      chosen.push_back(&rep);
      out.torus_reps.push_back(rep);
    }
  }
  if (Int(out.torus_reps.size()) != out.h1_torus_order)
    throw std::logic_error("torus representative count mismatch");
  return out;
}

}  // namespace qsub::cohom
