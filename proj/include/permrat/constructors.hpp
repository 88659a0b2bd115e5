#pragma once

// Finite fields F_q and the group families used throughout: cyclic, dihedral,
// dicyclic/quaternion, metacyclic semidirect products, symmetric/alternating,
// and the 2x2 linear groups GL2/SL2/PGL2/PSL2 over F_q.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "numtheory.hpp"

namespace permrat {

/// F_q with q = p^k; elements are encoded as integers whose base-p digits are
/// the polynomial coefficients (constant term first) modulo the field modulus.
class FiniteField {
 public:
  explicit FiniteField(std::int64_t q) : q_(q) {
    int k = 0;
    std::int64_t p = 0;
    if (q < 2 || !nt::is_prime_power(q, &p, &k)) throw InputError("field order " + std::to_string(q) + " is not a prime power");
    if (q > 1024) throw UnsupportedError("field order too large for table arithmetic");
    p_ = p;
    k_ = k;
    modulus_ = smallest_irreducible(p_, k_);
    build_tables();
  }

  std::int64_t order() const { return q_; }
  std::int64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  /// Monic modulus coefficients, constant term first (length k+1).
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const {
    if (a == 0) throw InputError("division by zero in F_q");
    return inv_[static_cast<std::size_t>(a)];
  }
  int one() const { return 1; }
  int from_int(std::int64_t n) const { return static_cast<int>(nt::floor_mod(n, p_)); }
  /// A generator of the multiplicative group.
  int primitive() const { return primitive_; }

  int pow(int a, std::int64_t e) const {
    int r = 1;
    e = nt::floor_mod(e, q_ - 1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  int mult_order(int a) const {
    int o = 1;
    for (int x = a; x != 1; x = mul(x, a)) ++o;
    return o;
  }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b); }

  static std::vector<std::int64_t> poly_mod(std::vector<std::int64_t> a, const std::vector<std::int64_t>& m, std::int64_t p) {
    // m monic
    while (a.size() >= m.size()) {
      std::int64_t lead = a.back();
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = nt::floor_mod(a[shift + i] - lead * m[i], p);
      a.pop_back();
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
  }

  static std::vector<std::int64_t> monic_from_code(std::int64_t code, int deg, std::int64_t p) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1, 0);
    for (int i = 0; i < deg; ++i) {
      c[static_cast<std::size_t>(i)] = code % p;
      code /= p;
    }
    c[static_cast<std::size_t>(deg)] = 1;
    return c;
  }

  /// Smallest monic irreducible polynomial when coefficient lists (c_{k-1}, ..., c_0) are compared lexicographically.
  static std::vector<std::int64_t> smallest_irreducible(std::int64_t p, int k) {
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      auto f = monic_from_code(code, k, p);
      bool irreducible = true;
      for (int d = 1; d <= k / 2 && irreducible; ++d) {
        std::int64_t cnt = 1;
        for (int i = 0; i < d; ++i) cnt *= p;
        for (std::int64_t c2 = 0; c2 < cnt && irreducible; ++c2) {
          auto g = monic_from_code(c2, d, p);
          if (poly_mod(f, g, p).empty()) irreducible = false;
        }
      }
      if (irreducible) return f;
    }
    throw InternalError("no irreducible polynomial found");
  }

  void build_tables() {
    auto q = static_cast<std::size_t>(q_);
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    auto digits = [&](std::int64_t a) {
      std::vector<std::int64_t> d(static_cast<std::size_t>(k_), 0);
      for (int i = 0; i < k_; ++i) {
        d[static_cast<std::size_t>(i)] = a % p_;
        a /= p_;
      }
      return d;
    };
    auto encode = [&](const std::vector<std::int64_t>& d) {
      std::int64_t a = 0;
      for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
      return static_cast<int>(a);
    };
    for (std::int64_t a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<std::int64_t> dn(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) dn[i] = nt::floor_mod(-da[i], p_);
      neg_[static_cast<std::size_t>(a)] = encode(dn);
      for (std::int64_t b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<std::int64_t> s(da.size());
        for (std::size_t i = 0; i < da.size(); ++i) s[i] = (da[i] + db[i]) % p_;
        add_[idx(static_cast<int>(a), static_cast<int>(b))] = encode(s);
        std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * k_), 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j)
            prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
        while (!prod.empty() && prod.back() == 0) prod.pop_back();
        auto r = poly_mod(prod, modulus_, p_);
        r.resize(static_cast<std::size_t>(k_), 0);
        mul_[idx(static_cast<int>(a), static_cast<int>(b))] = encode(r);
      }
    }
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (mul(a, b) == 1) inv_[static_cast<std::size_t>(a)] = b;
    for (int a = 1; a < q_; ++a)
      if (mult_order(a) == q_ - 1) {
        primitive_ = a;
        break;
      }
  }

  std::int64_t q_ = 0;
  std::int64_t p_ = 0;
  int k_ = 0;
  std::vector<std::int64_t> modulus_;
  std::vector<int> add_, mul_, neg_, inv_;
  int primitive_ = 1;
};

/// 2x2 matrix over F_q, row-major (a b; c d).
using Mat2 = std::array<int, 4>;

inline Mat2 mat_mul(const FiniteField& f, const Mat2& x, const Mat2& y) {
  return {f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])), f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
          f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])), f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3]))};
}

inline int mat_det(const FiniteField& f, const Mat2& x) { return f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2])); }

inline Mat2 mat_inv(const FiniteField& f, const Mat2& x) {
  int di = f.inv(mat_det(f, x));
  return {f.mul(x[3], di), f.mul(f.neg(x[1]), di), f.mul(f.neg(x[2]), di), f.mul(x[0], di)};
}

/// Action v -> vM on the q^2-1 nonzero row vectors; vector (a,b) is point a*q+b-1.
inline Permutation matrix_on_vectors(const FiniteField& f, const Mat2& m) {
  auto q = static_cast<int>(f.order());
  std::vector<Point> img(static_cast<std::size_t>(q * q - 1));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      int x = f.add(f.mul(a, m[0]), f.mul(b, m[2]));
      int y = f.add(f.mul(a, m[1]), f.mul(b, m[3]));
      img[static_cast<std::size_t>(a * q + b - 1)] = static_cast<Point>(x * q + y - 1);
    }
  return Permutation(std::move(img));
}

/// Action on the projective line: (0:1) is point 0, (1:x) is point 1+x.
inline Permutation matrix_on_line(const FiniteField& f, const Mat2& m) {
  auto q = static_cast<int>(f.order());
  auto point = [&](int a, int b) -> Point {
    if (a == 0) return 0;
    return static_cast<Point>(1 + f.mul(b, f.inv(a)));
  };
  std::vector<Point> img(static_cast<std::size_t>(q + 1));
  auto act = [&](int a, int b) { return point(f.add(f.mul(a, m[0]), f.mul(b, m[2])), f.add(f.mul(a, m[1]), f.mul(b, m[3]))); };
  img[0] = act(0, 1);
  for (int x = 0; x < q; ++x) img[static_cast<std::size_t>(1 + x)] = act(1, x);
  return Permutation(std::move(img));
}

namespace detail {

inline std::vector<Mat2> gl2_generators(const FiniteField& f) {
  int w = f.primitive();
  return {Mat2{w, 0, 0, 1}, Mat2{1, 1, 0, 1}, Mat2{0, 1, 1, 0}};
}

inline std::vector<Mat2> sl2_generators(const FiniteField& f) {
  int w = f.primitive();
  return {Mat2{1, 1, 0, 1}, Mat2{1, 0, 1, 1}, Mat2{w, 0, 0, f.inv(w)}};
}

template <class F>
Group matrix_group(const FiniteField& f, const std::vector<Mat2>& gens, F action, const BigInt& expected) {
  std::vector<Permutation> perms;
  for (const auto& m : gens) perms.push_back(action(f, m));
  Group g(std::move(perms));
  check_internal(g.order() == expected, "matrix group constructor produced the wrong order");
  return g;
}

}  // namespace detail

inline BigInt gl2_order(std::int64_t q) { return BigInt(q * q - 1) * (q * q - q); }

inline Group gl2(std::int64_t q) {
  FiniteField f(q);
  return detail::matrix_group(f, detail::gl2_generators(f), matrix_on_vectors, gl2_order(q));
}

inline Group sl2(std::int64_t q) {
  FiniteField f(q);
  return detail::matrix_group(f, detail::sl2_generators(f), matrix_on_vectors, BigInt(q) * (q * q - 1));
}

inline Group pgl2(std::int64_t q) {
  FiniteField f(q);
  return detail::matrix_group(f, detail::gl2_generators(f), matrix_on_line, BigInt(q) * (q * q - 1));
}

inline Group psl2(std::int64_t q) {
  FiniteField f(q);
  return detail::matrix_group(f, detail::sl2_generators(f), matrix_on_line, BigInt(q) * (q * q - 1) / std::gcd<std::int64_t>(2, q - 1));
}

/// Right regular representation of a group given by a multiplication rule on {0..n-1}.
inline Group regular_group(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                           const std::vector<std::size_t>& gens) {
  std::vector<Permutation> perms;
  for (auto g : gens) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(mul(i, g));
    perms.emplace_back(std::move(img));
  }
  return Group(std::move(perms));
}

inline Group cyclic(std::int64_t n) {
  if (n < 1) throw InputError("cyclic: n must be positive");
  std::vector<Point> img(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = static_cast<Point>((i + 1) % n);
  return Group({Permutation(std::move(img))});
}

/// C_n x| C_m with the generator of C_m acting as x -> x^r; requires r^m = 1 mod n.
inline Group semidirect_cp(std::int64_t n, std::int64_t m, std::int64_t r) {
  if (n < 1 || m < 1) throw InputError("semidirect: orders must be positive");
  r = nt::floor_mod(r, n);
  if (nt::powmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)) != 1 % static_cast<std::uint64_t>(n) || std::gcd(r, n) != 1)
    throw InputError("semidirect: x -> x^r is not an automorphism of order dividing m");
  std::vector<std::int64_t> rpow(static_cast<std::size_t>(m));
  rpow[0] = 1 % n;
  for (std::int64_t b = 1; b < m; ++b) rpow[static_cast<std::size_t>(b)] = rpow[static_cast<std::size_t>(b - 1)] * r % n;
  auto N = static_cast<std::size_t>(n);
  auto mul = [=](std::size_t x, std::size_t y) {
    auto a = static_cast<std::int64_t>(x % N), b = static_cast<std::int64_t>(x / N);
    auto c = static_cast<std::int64_t>(y % N), d = static_cast<std::int64_t>(y / N);
    std::int64_t na = (a + rpow[static_cast<std::size_t>(b)] * c) % n;
    std::int64_t nb = (b + d) % m;
    return static_cast<std::size_t>(nb) * N + static_cast<std::size_t>(na);
  };
  std::vector<std::size_t> gens;
  if (n > 1) gens.push_back(1);
  if (m > 1) gens.push_back(N);
  if (gens.empty()) gens.push_back(0);
  return regular_group(N * static_cast<std::size_t>(m), mul, gens);
}

/// Dihedral group of the given order (natural action on a polygon when order >= 6).
inline Group dihedral(std::int64_t order) {
  if (order < 2 || order % 2) throw InputError("dihedral: order must be even");
  std::int64_t n = order / 2;
  if (n < 3) return semidirect_cp(n, 2, -1);
  std::vector<Point> rot(static_cast<std::size_t>(n)), ref(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    rot[static_cast<std::size_t>(i)] = static_cast<Point>((i + 1) % n);
    ref[static_cast<std::size_t>(i)] = static_cast<Point>(nt::floor_mod(-i, n));
  }
  return Group({Permutation(std::move(rot)), Permutation(std::move(ref))});
}

/// Dicyclic group of order 4n: <x, y | x^2n, y^2 = x^n, y^-1 x y = x^-1>.
inline Group dicyclic(std::int64_t order) {
  if (order < 4 || order % 4) throw InputError("dicyclic: order must be divisible by 4");
  std::int64_t n = order / 4, two_n = 2 * n;
  auto T = static_cast<std::size_t>(two_n);
  // element x^a y^b encoded as b*2n + a
  auto mul = [=](std::size_t u, std::size_t v) {
    auto a = static_cast<std::int64_t>(u % T), b = static_cast<std::int64_t>(u / T);
    auto c = static_cast<std::int64_t>(v % T), d = static_cast<std::int64_t>(v / T);
    std::int64_t na, nb;
    if (b == 0) {
      na = a + c;
      nb = d;
    } else if (d == 0) {
      na = a - c;
      nb = 1;
    } else {
      na = a - c + n;
      nb = 0;
    }
    return static_cast<std::size_t>(nb) * T + static_cast<std::size_t>(nt::floor_mod(na, two_n));
  };
  return regular_group(2 * T, mul, {1, T});
}

inline Group generalized_quaternion(std::int64_t order) {
  std::int64_t p = 0;
  int e = 0;
  if (!nt::is_prime_power(order, &p, &e) || p != 2 || e < 3) throw InputError("quaternion: order must be 2^N, N >= 3");
  return dicyclic(order);
}

inline Group semidihedral(std::int64_t order) {
  std::int64_t p = 0;
  int e = 0;
  if (!nt::is_prime_power(order, &p, &e) || p != 2 || e < 4) throw InputError("semidihedral: order must be 2^N, N >= 4");
  return semidirect_cp(order / 2, 2, order / 4 - 1);
}

inline Group modular_group(std::int64_t order) {
  std::int64_t p = 0;
  int e = 0;
  if (!nt::is_prime_power(order, &p, &e) || p != 2 || e < 4) throw InputError("modular: order must be 2^N, N >= 4");
  return semidirect_cp(order / 2, 2, order / 4 + 1);
}

inline Group symmetric(std::int64_t n) {
  if (n < 1) throw InputError("symmetric: n must be positive");
  if (n == 1) return Group({Permutation(1)});
  std::vector<Point> cyc(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = static_cast<Point>((i + 1) % n);
  std::vector<Point> tr(static_cast<std::size_t>(n));
  std::iota(tr.begin(), tr.end(), Point{0});
  std::swap(tr[0], tr[1]);
  return Group({Permutation(std::move(cyc)), Permutation(std::move(tr))});
}

inline Group alternating(std::int64_t n) {
  if (n < 1) throw InputError("alternating: n must be positive");
  if (n < 3) return Group({Permutation(static_cast<std::size_t>(n))});
  std::vector<Permutation> gens;
  for (std::int64_t i = 2; i < n; ++i) {
    std::vector<Point> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), Point{0});
    img[0] = 1;
    img[1] = static_cast<Point>(i);
    img[static_cast<std::size_t>(i)] = 0;
    gens.emplace_back(std::move(img));
  }
  return Group(std::move(gens));
}

/// Unitriangular 3x3 matrices over F_p acting on F_p^3 (extraspecial of order p^3).
inline Group heisenberg(std::int64_t p) {
  if (!nt::is_prime(p)) throw InputError("heisenberg: p must be prime");
  auto P = static_cast<std::size_t>(p);
  auto act = [&](int which) {
    std::vector<Point> img(P * P * P);
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b < P; ++b)
        for (std::size_t c = 0; c < P; ++c) {
          // row vector (a,b,c) times I+E12 or I+E23
          std::size_t na = a, nb = b, nc = c;
          if (which == 0) nb = (b + a) % P;
          else nc = (c + b) % P;
          img[(a * P + b) * P + c] = static_cast<Point>((na * P + nb) * P + nc);
        }
    return Permutation(std::move(img));
  };
  return Group({act(0), act(1)});
}

/// Direct product acting on the disjoint union of the two point sets.
inline Group direct_product(const Group& a, const Group& b) {
  std::size_t da = a.degree(), db = b.degree();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = g(static_cast<Point>(i));
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + i);
    gens.emplace_back(std::move(img));
  }
  for (const auto& g : b.generators()) {
    std::vector<Point> img(da + db);
    for (std::size_t i = 0; i < da; ++i) img[i] = static_cast<Point>(i);
    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + g(static_cast<Point>(i)));
    gens.emplace_back(std::move(img));
  }
  return Group(std::move(gens));
}

inline Group abelian(const std::vector<std::int64_t>& factors) {
  if (factors.empty()) return cyclic(1);
  Group g = cyclic(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, cyclic(factors[i]));
  return g;
}

}  // namespace permrat
