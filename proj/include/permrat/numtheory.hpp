#pragma once

// Small exact number-theory helpers shared by every layer.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace permrat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace nt {

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm(std::int64_t a, std::int64_t b) { return a == 0 || b == 0 ? 0 : a / gcd(a, b) * b; }

/// Trial-division factorisation; returns (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (auto [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

inline int mobius(std::int64_t n) {
  int m = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i * i <= n; ++i) {
    if (n % i) continue;
    d.push_back(i);
    if (i * i != n) d.push_back(n / i);
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Largest power of p dividing n.
inline std::int64_t p_part(std::int64_t n, std::int64_t p) {
  std::int64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_prime_power(std::int64_t n, std::int64_t* prime = nullptr, int* exponent = nullptr) {
  auto f = factor(n);
  if (f.size() != 1) return false;
  if (prime) *prime = f[0].first;
  if (exponent) *exponent = f[0].second;
  return true;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t prime) { return powmod(a, prime - 2, prime); }

/// Multiplicative order of a modulo m (requires gcd(a, m) = 1).
inline std::int64_t mult_order(std::int64_t a, std::int64_t m) {
  if (std::gcd(a, m) != 1) throw std::invalid_argument("mult_order: not a unit");
  std::int64_t ord = euler_phi(m);
  for (auto [q, e] : factor(ord))
    while (ord % q == 0 && powmod(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(ord / q),
                                  static_cast<std::uint64_t>(m)) == 1 % static_cast<std::uint64_t>(m))
      ord /= q;
  return ord;
}

/// 2-adic (or p-adic) valuation of a non-zero integer.
inline int valuation(BigInt n, unsigned p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& q, unsigned p) {
  return valuation(boost::multiprecision::numerator(q), p) - valuation(boost::multiprecision::denominator(q), p);
}

inline BigInt big_pow(std::int64_t base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

/// Trace over Q(zeta_m) of a primitive o-th root of unity, o | m.
inline std::int64_t root_of_unity_trace(std::int64_t o, std::int64_t m) {
  return mobius(o) * (euler_phi(m) / euler_phi(o));
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace nt
}  // namespace permrat
