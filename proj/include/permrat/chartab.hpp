#pragma once

// Class functions and rational character tables.
//
// The table is built by splitting the centre of the group algebra modulo a
// prime l = 1 mod exp(G): common eigenvectors of the class multiplication
// matrices give the central characters, orthogonality gives the degrees, and
// Galois orbits are read off from power maps. Only orbit sums are returned,
// so every value is a rational integer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "group.hpp"
#include "lattice.hpp"
#include "numtheory.hpp"

namespace permrat {

/// Exact rational-valued class function on a group.
struct ClassFunction {
  Group group;
  std::vector<Rational> values;

  static ClassFunction constant(const Group& g, const Rational& c) {
    return {g, std::vector<Rational>(g.num_classes(), c)};
  }
  static ClassFunction from_ints(const Group& g, const std::vector<std::int64_t>& v) {
    ClassFunction f{g, {}};
    for (auto x : v) f.values.emplace_back(x);
    return f;
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  ClassFunction scaled(const Rational& c) const {
    ClassFunction f = *this;
    for (auto& v : f.values) v *= c;
    return f;
  }
  bool operator==(const ClassFunction& o) const { return values == o.values; }
};

/// <f, g> = 1/|G| sum_x f(x) g(x^-1).
inline Rational inner(const ClassFunction& f, const ClassFunction& g) {
  const auto& grp = f.group;
  Rational s = 0;
  for (std::size_t k = 0; k < grp.num_classes(); ++k)
    s += grp.classes()[k].size * f.values[k] * g.values[grp.inverse_class(k)];
  return s / grp.order_int();
}

struct RationalRow {
  std::vector<std::int64_t> values;  // trace of the Galois orbit
  std::int64_t degree = 1;           // degree of one complex constituent
  std::int64_t field_degree = 1;     // [Q(chi):Q]
  int fs = 1;                        // Frobenius-Schur indicator of a constituent
};

struct RationalTable {
  Group group;
  std::vector<RationalRow> rows;
  std::uint64_t prime = 0;

  std::size_t size() const { return rows.size(); }
  ClassFunction row_function(std::size_t i) const { return ClassFunction::from_ints(group, rows[i].values); }
};

namespace detail {

using u64 = std::uint64_t;

struct ModField {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return nt::mulmod(a, b, p); }
  u64 inv(u64 a) const { return nt::invmod(a, p); }
  u64 of(std::int64_t x) const { return static_cast<u64>(nt::floor_mod(x, static_cast<std::int64_t>(p))); }
  std::int64_t lift(u64 a) const {
    auto s = static_cast<std::int64_t>(a);
    return s > static_cast<std::int64_t>(p / 2) ? s - static_cast<std::int64_t>(p) : s;
  }
};

using ModMatrix = std::vector<std::vector<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(const ModField& f, ModMatrix& m) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    u64 iv = f.inv(m[row][c]);
    for (auto& x : m[row]) x = f.mul(x, iv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      u64 q = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(q, m[row][j]));
    }
    piv.push_back(c);
    ++row;
  }
  m.resize(row);
  return piv;
}

/// Basis of the null space {x : a x = 0}.
inline ModMatrix null_space(const ModField& f, ModMatrix a) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  auto piv = rref(f, a);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  ModMatrix out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::vector<u64> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.sub(0, a[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Characteristic polynomial (coefficients, constant term first) via Hessenberg form.
inline std::vector<u64> char_poly(const ModField& f, ModMatrix a) {
  const std::size_t n = a.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && a[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(a[i], a[m]);
      for (auto& row : a) std::swap(row[i], row[m]);
    }
    u64 iv = f.inv(a[m][m - 1]);
    for (std::size_t r = m + 1; r < n; ++r) {
      u64 u = f.mul(a[r][m - 1], iv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) a[r][c] = f.sub(a[r][c], f.mul(u, a[m][c]));
      for (std::size_t c = 0; c < n; ++c) a[c][m] = f.add(a[c][m], f.mul(u, a[c][r]));
    }
  }
  // p_k(x) for the leading k x k block
  std::vector<std::vector<u64>> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<u64> cur(k + 1, 0);
    // (x - h_kk) p_{k-1}
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      cur[d + 1] = f.add(cur[d + 1], p[k - 1][d]);
      cur[d] = f.sub(cur[d], f.mul(a[k - 1][k - 1], p[k - 1][d]));
    }
    u64 prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = f.mul(prod, a[i][i - 1]);
      u64 coef = f.mul(a[i - 1][k - 1], prod);
      for (std::size_t d = 0; d < p[i - 1].size(); ++d) cur[d] = f.sub(cur[d], f.mul(coef, p[i - 1][d]));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

inline std::vector<u64> roots(const ModField& f, const std::vector<u64>& poly) {
  std::vector<u64> out;
  for (u64 x = 0; x < f.p; ++x) {
    u64 v = 0;
    for (std::size_t d = poly.size(); d-- > 0;) v = f.add(f.mul(v, x), poly[d]);
    if (v == 0) out.push_back(x);
    if (out.size() + 1 == poly.size()) break;
  }
  return out;
}

inline u64 choose_prime(std::int64_t exponent, std::int64_t order) {
  for (std::int64_t k = 1;; ++k) {
    std::int64_t l = 1 + k * exponent;
    if (l > 2 * order && nt::is_prime(l)) return static_cast<u64>(l);
  }
}

}  // namespace detail

/// Rational character table: one row per Galois orbit of complex irreducibles.
inline RationalTable rational_table(const Group& g) {
  using namespace detail;
  const std::int64_t n = g.order_int();
  const std::size_t r = g.num_classes();
  const auto& cls = g.classes();
  const std::int64_t e = g.exponent();
  ModField f{choose_prime(e, n)};

  std::vector<std::size_t> class_order(r);
  std::iota(class_order.begin(), class_order.end(), std::size_t{0});
  std::stable_sort(class_order.begin(), class_order.end(),
                   [&](std::size_t a, std::size_t b) { return cls[a].size < cls[b].size; });

  auto class_matrix = [&](std::size_t j) {
    ModMatrix m(r, std::vector<u64>(r, 0));
    const auto& el = g.elements();
    for (std::size_t l = 0; l < r; ++l) {
      const auto& z = g.class_rep(l);
      for (auto xi : g.class_elements(j)) {
        std::size_t k = g.class_of(el[xi].inverse() * z);
        m[k][l] = f.add(m[k][l], 1);
      }
    }
    return m;
  };

  // each space is an RREF basis; split until all are one-dimensional
  std::vector<ModMatrix> spaces;
  {
    ModMatrix whole(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) whole[i][i] = 1;
    spaces.push_back(std::move(whole));
  }
  for (std::size_t j : class_order) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const ModMatrix& s) { return s.size() == 1; })) break;
    if (cls[j].size == 1 && cls[j].element_order == 1) continue;
    ModMatrix mj = class_matrix(j);
    std::vector<ModMatrix> next;
    for (auto& sp : spaces) {
      if (sp.size() == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      const std::size_t d = sp.size();
      ModMatrix tmp = sp;
      auto piv = rref(f, tmp);
      // images of basis vectors, in coordinates
      ModMatrix a(d, std::vector<u64>(d, 0));
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<u64> img(r, 0);
        for (std::size_t row = 0; row < r; ++row) {
          u64 s = 0;
          for (std::size_t l = 0; l < r; ++l)
            if (mj[row][l]) s = f.add(s, f.mul(mj[row][l], sp[k][l]));
          img[row] = s;
        }
        for (std::size_t i = 0; i < d; ++i) a[i][k] = img[piv[i]];
      }
      auto ev = roots(f, char_poly(f, a));
      check_internal(!ev.empty(), "character table: no eigenvalue mod l");
      std::size_t total = 0;
      for (auto lam : ev) {
        ModMatrix shifted = a;
        for (std::size_t i = 0; i < d; ++i) shifted[i][i] = f.sub(shifted[i][i], lam);
        auto ker = null_space(f, shifted);
        ModMatrix sub;
        for (const auto& c : ker) {
          std::vector<u64> v(r, 0);
          for (std::size_t k = 0; k < d; ++k)
            if (c[k])
              for (std::size_t l = 0; l < r; ++l) v[l] = f.add(v[l], f.mul(c[k], sp[k][l]));
          sub.push_back(std::move(v));
        }
        rref(f, sub);
        total += sub.size();
        next.push_back(std::move(sub));
      }
      check_internal(total == d, "character table: class matrix not diagonalisable mod l");
    }
    spaces = std::move(next);
  }
  check_internal(spaces.size() == r, "character table: centre did not split");

  // complex characters mod l
  std::vector<std::vector<u64>> chars;
  std::vector<std::int64_t> degrees;
  const std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
  for (auto& sp : spaces) {
    auto w = sp[0];
    check_internal(w[0] != 0, "character table: central character vanishes at 1");
    u64 iv = f.inv(w[0]);
    for (auto& x : w) x = f.mul(x, iv);
    u64 s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = f.add(s, f.mul(f.mul(w[k], w[g.inverse_class(k)]), f.inv(f.of(cls[k].size))));
    check_internal(s != 0, "character table: degree sum vanishes");
    u64 dsq = f.mul(f.of(n), f.inv(s));
    std::int64_t deg = 0;
    for (std::int64_t d = 1; d <= root; ++d)
      if (f.of(d * d) == dsq) {
        deg = d;
        break;
      }
    check_internal(deg > 0, "character table: no degree found");
    std::vector<u64> chi(r);
    for (std::size_t k = 0; k < r; ++k) chi[k] = f.mul(f.mul(w[k], f.of(deg)), f.inv(f.of(cls[k].size)));
    chars.push_back(std::move(chi));
    degrees.push_back(deg);
  }

  // Galois orbits through the power maps
  std::map<std::vector<u64>, std::size_t> lookup;
  for (std::size_t i = 0; i < chars.size(); ++i) lookup[chars[i]] = i;
  std::vector<std::vector<std::size_t>> pmaps;
  for (std::int64_t t = 1; t <= e; ++t)
    if (std::gcd(t, e) == 1) pmaps.push_back(g.power_map(t));
  auto sq = g.power_map(2);

  RationalTable tab{g, {}, f.p};
  std::vector<bool> used(chars.size(), false);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> orbit;
    for (const auto& pm : pmaps) {
      std::vector<u64> c(r);
      for (std::size_t k = 0; k < r; ++k) c[k] = chars[i][pm[k]];
      auto it = lookup.find(c);
      check_internal(it != lookup.end(), "character table: Galois image is not a character");
      if (!used[it->second]) {
        used[it->second] = true;
        orbit.push_back(it->second);
      }
    }
    RationalRow row;
    row.degree = degrees[i];
    row.field_degree = static_cast<std::int64_t>(orbit.size());
    row.values.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
      u64 s = 0;
      for (auto o : orbit) s = f.add(s, chars[o][k]);
      row.values[k] = f.lift(s);
    }
    u64 fs = 0;
    for (std::size_t k = 0; k < r; ++k) fs = f.add(fs, f.mul(f.of(cls[k].size), chars[i][sq[k]]));
    row.fs = static_cast<int>(f.lift(f.mul(fs, f.inv(f.of(n)))));
    check_internal(row.fs >= -1 && row.fs <= 1, "character table: indicator out of range");
    check_internal(row.values[0] == row.degree * row.field_degree, "character table: degree mismatch");
    tab.rows.push_back(std::move(row));
  }

  std::sort(tab.rows.begin(), tab.rows.end(), [](const RationalRow& a, const RationalRow& b) {
    if (a.values[0] != b.values[0]) return a.values[0] < b.values[0];
    return a.values > b.values;
  });

  // exact verification: both orthogonality relations and the degree equation
  std::int64_t sumsq = 0;
  for (const auto& row : tab.rows) sumsq += row.degree * row.degree * row.field_degree;
  check_internal(sumsq == n, "character table: sum of squared degrees");
  for (std::size_t i = 0; i < tab.rows.size(); ++i)
    for (std::size_t j = i; j < tab.rows.size(); ++j) {
      BigInt s = 0;
      for (std::size_t k = 0; k < r; ++k)
        s += BigInt(cls[k].size) * tab.rows[i].values[k] * tab.rows[j].values[g.inverse_class(k)];
      check_internal(s == (i == j ? BigInt(n) * tab.rows[i].field_degree : BigInt(0)),
                     "character table: row orthogonality");
    }
  const std::int64_t phi_e = nt::euler_phi(e);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Rational s = 0;
      for (const auto& row : tab.rows)
        s += Rational(row.values[a] * row.values[g.inverse_class(b)], row.field_degree);
      std::int64_t hits = 0;
      for (const auto& pm : pmaps) hits += pm[b] == a;
      check_internal(s == Rational(cls[b].centralizer_order * hits, phi_e), "character table: column orthogonality");
    }
  return tab;
}

inline int fs_indicator(const RationalTable& t, std::size_t row) { return t.rows[row].fs; }

// ---- induction, restriction, permutation characters ---------------------

/// For each class of H, the class of G containing it.
inline std::vector<std::size_t> fusion(const Group& h, const Group& g) {
  std::vector<std::size_t> m(h.num_classes());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = g.class_of(h.class_rep(k));
  return m;
}

inline ClassFunction restrict_to(const ClassFunction& f, const Group& h, const std::vector<std::size_t>& fus) {
  ClassFunction out{h, std::vector<Rational>(h.num_classes())};
  for (std::size_t k = 0; k < fus.size(); ++k) out.values[k] = f.values[fus[k]];
  return out;
}

inline ClassFunction restrict_to(const ClassFunction& f, const Group& h) { return restrict_to(f, h, fusion(h, f.group)); }

/// Ind_H^G f, from the fusion of H-classes into G-classes.
inline ClassFunction induce(const ClassFunction& f, const Group& g, const std::vector<std::size_t>& fus) {
  const auto& h = f.group;
  ClassFunction out{g, std::vector<Rational>(g.num_classes(), 0)};
  for (std::size_t k = 0; k < fus.size(); ++k) out.values[fus[k]] += h.classes()[k].size * f.values[k];
  const std::int64_t ho = h.order_int();
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.values[k] *= Rational(g.classes()[k].centralizer_order, ho);
  return out;
}

inline ClassFunction induce(const ClassFunction& f, const Group& g) { return induce(f, g, fusion(f.group, g)); }

/// Character of G acting on the cosets of H.
inline ClassFunction perm_character(const Group& g, const Group& h) {
  return induce(ClassFunction::constant(h, 1), g);
}

/// Multiplicity of the rational irreducible alpha in beta; beta must be rational-valued.
inline BigInt mu(const ClassFunction& alpha, const ClassFunction& beta) {
  Rational q = inner(alpha, beta) / inner(alpha, alpha);
  if (denominator(q) != 1) throw InputError("multiplicity is not an integer");
  return numerator(q);
}

/// Coordinates of a class function in the basis of rows (each divided by its norm).
inline std::vector<BigInt> decompose(const RationalTable& t, const ClassFunction& f) {
  std::vector<BigInt> c;
  for (std::size_t i = 0; i < t.size(); ++i) c.push_back(mu(t.row_function(i), f));
  return c;
}

// ---- normalised traces and the cyclic-subgroup inner product -----------

/// Average of a linear character of order n over the generators of a cyclic group.
inline Rational tr_star_on_cyclic(std::int64_t n) { return Rational(nt::mobius(n), nt::euler_phi(n)); }

/// For each cyclic-subgroup class U of G: sum over cyclic D <= H with D ~ U of weight(D),
/// where weight is given per cyclic-subgroup class of H.
inline std::vector<Rational> cyclic_sums(const Group& g, const Group& h, const std::vector<Rational>& weight) {
  std::vector<Rational> a(g.cyclic_classes().size(), 0);
  const auto& hc = h.cyclic_classes();
  for (std::size_t c = 0; c < hc.size(); ++c) {
    std::size_t u = g.cyclic_class_of(h.class_rep(hc[c].generator_class));
    a[u] += hc[c].num_conjugates * weight[c];
  }
  return a;
}

/// <Ind_{H1}^G t1, Ind_{H2}^G t2> through cyclic subgroups; t1 rational-valued,
/// t2 given by its normalised trace on cyclic subgroups of H2.
inline Rational cyclic_inner(const Group& g, const Group& h1, const std::vector<Rational>& a1, const Group& h2,
                             const std::vector<Rational>& a2_star) {
  Rational s = 0;
  const auto& cc = g.cyclic_classes();
  for (std::size_t u = 0; u < cc.size(); ++u) {
    if (a1[u] == 0 || a2_star[u] == 0) continue;
    s += Rational(cc[u].normalizer_order * nt::euler_phi(cc[u].order)) * a1[u] * a2_star[u];
  }
  return s / (h1.order_int() * h2.order_int());
}

/// Values of a rational class function on each cyclic-subgroup class of its group.
inline std::vector<Rational> values_on_cyclic(const ClassFunction& f) {
  const auto& cc = f.group.cyclic_classes();
  std::vector<Rational> w;
  for (const auto& c : cc) w.push_back(f.values[c.generator_class]);
  return w;
}

/// <Ind t1, Ind t2> for rational-valued class functions on subgroups H1, H2 of G.
inline Rational general_induction_inner(const Group& g, const ClassFunction& t1, const ClassFunction& t2) {
  auto a1 = cyclic_sums(g, t1.group, values_on_cyclic(t1));
  auto a2 = cyclic_sums(g, t2.group, values_on_cyclic(t2));
  return cyclic_inner(g, t1.group, a1, t2.group, a2);
}

}  // namespace permrat
