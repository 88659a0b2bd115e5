#pragma once

// Exact integer linear algebra: Smith and Hermite forms, finite abelian
// groups in invariant-factor form, images and kernels of maps between them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace permrat {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // row-major, rows of equal length

inline IntMatrix zero_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, IntVector(cols, 0)); }

inline IntMatrix identity_matrix(std::size_t n) {
  auto m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t num_cols(const IntMatrix& m) { return m.empty() ? 0 : m.front().size(); }

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = num_cols(b);
  auto c = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
  auto t = zero_matrix(num_cols(a), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct SmithForm {
  IntMatrix d, u, v;  // u * m * v == d
  std::vector<BigInt> diagonal;  // non-negative, each divides the next; zeros last
};

/// Smith normal form with unimodular transforms.
inline SmithForm snf(const IntMatrix& m) {
  const std::size_t rows = m.size(), cols = num_cols(m);
  SmithForm r{m, identity_matrix(rows), identity_matrix(cols), {}};
  auto& a = r.d;
  auto& u = r.u;
  auto& v = r.v;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  // row_i -= q * row_j
  auto row_op = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
  };
  auto col_op = [&](std::size_t i, std::size_t j, const BigInt& q) {
    for (std::size_t c = 0; c < rows; ++c) a[c][i] -= q * a[c][j];
    for (std::size_t c = 0; c < cols; ++c) v[c][i] -= q * v[c][j];
  };

  const std::size_t lim = std::min(rows, cols);
  for (std::size_t t = 0; t < lim; ++t) {
    while (true) {
      // pivot: smallest non-zero absolute value in the remaining block
      std::size_t pi = rows, pj = cols;
      BigInt best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
            best = abs(a[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) goto done;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        row_op(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        col_op(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pull an offending row into row t
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_op(t, bad, -1);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
done:
  for (std::size_t t = 0; t < lim; ++t) r.diagonal.push_back(a[t][t]);
  return r;
}

// ---- finite abelian groups ---------------------------------------------

/// A finite abelian group as invariant factors d1 | d2 | ... (all > 1).
struct FinAb {
  std::vector<std::int64_t> invariants;

  /// Normalises an arbitrary list of cyclic orders (entries <= 1 dropped).
  static FinAb from_cyclic_orders(const std::vector<std::int64_t>& orders) {
    std::map<std::int64_t, std::vector<std::int64_t>> parts;  // prime -> prime powers
    for (auto o : orders) {
      if (o <= 1) continue;
      for (auto [p, e] : nt::factor(o)) {
        std::int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        parts[p].push_back(q);
      }
    }
    std::size_t len = 0;
    for (auto& [p, v] : parts) {
      std::sort(v.rbegin(), v.rend());
      len = std::max(len, v.size());
    }
    std::vector<std::int64_t> inv(len, 1);
    for (auto& [p, v] : parts)
      for (std::size_t i = 0; i < v.size(); ++i) inv[len - 1 - i] *= v[i];
    return FinAb{inv};
  }

  bool trivial() const { return invariants.empty(); }

  std::int64_t order() const {
    std::int64_t o = 1;
    for (auto d : invariants) o *= d;
    return o;
  }

  std::int64_t exponent() const { return invariants.empty() ? 1 : invariants.back(); }

  FinAb p_part(std::int64_t p) const {
    std::vector<std::int64_t> v;
    for (auto d : invariants) v.push_back(nt::p_part(d, p));
    return from_cyclic_orders(v);
  }

  /// Product of the parts of prime-to-p order.
  FinAb p_prime_part(std::int64_t p) const {
    std::vector<std::int64_t> v;
    for (auto d : invariants) v.push_back(d / nt::p_part(d, p));
    return from_cyclic_orders(v);
  }

  static FinAb direct_sum(const FinAb& a, const FinAb& b) {
    std::vector<std::int64_t> v = a.invariants;
    v.insert(v.end(), b.invariants.begin(), b.invariants.end());
    return from_cyclic_orders(v);
  }

  /// "1" for the trivial group, otherwise e.g. "Z/2 x Z/4".
  std::string to_string() const {
    if (invariants.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < invariants.size(); ++i) os << (i ? " x " : "") << "Z/" << invariants[i];
    return os.str();
  }

  friend bool operator==(const FinAb&, const FinAb&) = default;
};

inline std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN)) throw UnsupportedError("integer overflow");
  return static_cast<std::int64_t>(x);
}

struct Cokernel {
  FinAb torsion;
  std::size_t free_rank = 0;
};

/// Z^rows modulo the span of the columns of m.
inline Cokernel cokernel(const IntMatrix& m, std::size_t rows) {
  Cokernel c;
  if (m.empty() || num_cols(m) == 0) {
    c.free_rank = rows;
    return c;
  }
  auto s = snf(m);
  std::vector<std::int64_t> tors;
  std::size_t rank = 0;
  for (const auto& d : s.diagonal)
    if (d != 0) {
      ++rank;
      tors.push_back(to_int64(d));
    }
  c.torsion = FinAb::from_cyclic_orders(tors);
  c.free_rank = rows - rank;
  return c;
}

inline Cokernel cokernel(const IntMatrix& m) { return cokernel(m, m.size()); }

// ---- lattices given by generators ---------------------------------------

/// Row-echelon basis (Hermite style, positive pivots, entries above pivots reduced)
/// of the lattice spanned by the given vectors in Z^dim.
inline IntMatrix lattice_basis(IntMatrix vecs, std::size_t dim) {
  IntMatrix basis;
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < vecs.size(); ++col) {
    // gcd-reduce column col among rows >= row
    while (true) {
      std::size_t piv = vecs.size();
      for (std::size_t i = row; i < vecs.size(); ++i)
        if (vecs[i][col] != 0 && (piv == vecs.size() || abs(vecs[i][col]) < abs(vecs[piv][col]))) piv = i;
      if (piv == vecs.size()) break;
      std::swap(vecs[row], vecs[piv]);
      bool done = true;
      for (std::size_t i = row + 1; i < vecs.size(); ++i) {
        if (vecs[i][col] == 0) continue;
        BigInt q = vecs[i][col] / vecs[row][col];
        for (std::size_t j = col; j < dim; ++j) vecs[i][j] -= q * vecs[row][j];
        if (vecs[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (row < vecs.size() && vecs[row][col] != 0) {
      if (vecs[row][col] < 0)
        for (auto& x : vecs[row]) x = -x;
      ++row;
    }
  }
  vecs.resize(row);
  // reduce entries above pivots
  for (std::size_t r = 0; r < vecs.size(); ++r) {
    std::size_t pc = 0;
    while (vecs[r][pc] == 0) ++pc;
    for (std::size_t k = 0; k < r; ++k) {
      BigInt q = vecs[k][pc] / vecs[r][pc];
      if (vecs[k][pc] - q * vecs[r][pc] < 0) --q;
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j) vecs[k][j] -= q * vecs[r][j];
    }
  }
  return vecs;
}

/// Membership of v in the lattice with the given echelon basis.
inline bool lattice_contains(const IntMatrix& basis, IntVector v) {
  for (const auto& b : basis) {
    std::size_t pc = 0;
    while (b[pc] == 0) ++pc;
    for (std::size_t j = 0; j < pc; ++j)
      if (v[j] != 0) return false;
    if (v[pc] % b[pc] != 0) return false;
    BigInt q = v[pc] / b[pc];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * b[j];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Index of a full-rank sublattice given by an echelon basis of Z^dim (0 if not full rank).
inline BigInt lattice_index(const IntMatrix& basis, std::size_t dim) {
  if (basis.size() != dim) return 0;
  BigInt d = 1;
  for (std::size_t i = 0; i < dim; ++i) d *= basis[i][i];
  return abs(d);
}

/// Structure of the subgroup of (+)_j Z/b_j generated by the given coordinate vectors.
inline FinAb subgroup_image(const std::vector<std::int64_t>& targets, const IntMatrix& vectors) {
  const std::size_t k = targets.size();
  if (k == 0) return {};
  IntMatrix gens = vectors;
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e(k, 0);
    e[j] = targets[j];
    gens.push_back(e);
  }
  for (const auto& v : vectors)
    if (v.size() != k) throw InputError("subgroup_image: vector length mismatch");
  IntMatrix b = lattice_basis(gens, k);  // full rank; upper triangular
  check_internal(b.size() == k, "subgroup_image: lattice not full rank");
  // express each target relation d_j e_j in the basis b: solve x * b = d_j e_j
  IntMatrix x = zero_matrix(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector rhs(k, 0);
    rhs[j] = targets[j];
    for (std::size_t i = 0; i < k; ++i) {
      check_internal(rhs[i] % b[i][i] == 0, "subgroup_image: non-integral coordinates");
      BigInt c = rhs[i] / b[i][i];
      x[j][i] = c;
      for (std::size_t l = i; l < k; ++l) rhs[l] -= c * b[i][l];
    }
  }
  return cokernel(x).torsion;
}

/// Basis (echelon rows) of {x in Z^cols : (m x)_i = 0 mod moduli_i}.
inline IntMatrix kernel_lattice(const IntMatrix& m, const std::vector<std::int64_t>& moduli, std::size_t cols) {
  const std::size_t rows = m.size();
  if (moduli.size() != rows) throw InputError("kernel_lattice: moduli length mismatch");
  // kernel of [m | diag(moduli)] projected to the first cols coordinates
  auto a = zero_matrix(rows, cols + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    a[i][cols + i] = moduli[i];
  }
  IntMatrix gens;
  if (rows == 0) {
    gens = identity_matrix(cols);
  } else {
    auto s = snf(a);
    std::size_t rank = 0;
    for (const auto& d : s.diagonal)
      if (d != 0) ++rank;
    for (std::size_t j = rank; j < cols + rows; ++j) {
      IntVector v(cols);
      for (std::size_t i = 0; i < cols; ++i) v[i] = s.v[i][j];
      gens.push_back(std::move(v));
    }
  }
  return lattice_basis(gens, cols);
}

/// An integer solution of a x = b, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  const std::size_t rows = a.size(), cols = num_cols(a);
  if (b.size() != rows) throw InputError("solve_integer: size mismatch");
  if (cols == 0) {
    for (const auto& x : b)
      if (x != 0) return std::nullopt;
    return IntVector{};
  }
  auto s = snf(a);
  IntVector ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) ub[i] += s.u[i][j] * b[j];
  IntVector y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt d = i < s.diagonal.size() ? s.diagonal[i] : BigInt(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % d != 0) return std::nullopt;
    y[i] = ub[i] / d;
  }
  IntVector x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[i] += s.v[i][j] * y[j];
  return x;
}

}  // namespace permrat
