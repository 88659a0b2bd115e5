#include <gtest/gtest.h>

#include <permrat/numtheory.hpp>

using namespace permrat;

namespace {

// trial-division oracles
std::int64_t phi_naive(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

int mobius_naive(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d;
    if (!prime || n % p) continue;
    if ((n / p) % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

}  // namespace

TEST(NumberTheory, TotientAndMobiusMatchTrialDivision) {
  for (std::int64_t n = 1; n <= 300; ++n) {
    EXPECT_EQ(nt::euler_phi(n), phi_naive(n)) << n;
    EXPECT_EQ(nt::mobius(n), mobius_naive(n)) << n;
  }
}

TEST(NumberTheory, MobiusSumsOverDivisorsVanish) {
  for (std::int64_t n = 2; n <= 200; ++n) {
    int s = 0;
    std::int64_t ph = 0;
    for (auto d : nt::divisors(n)) {
      s += nt::mobius(d);
      ph += nt::euler_phi(d);
    }
    EXPECT_EQ(s, 0);
    EXPECT_EQ(ph, n);
  }
}

TEST(NumberTheory, FactorAndPrimeParts) {
  EXPECT_EQ(nt::prime_divisors(4896), (std::vector<std::int64_t>{2, 3, 17}));
  EXPECT_EQ(nt::p_part(4896, 2), 32);
  EXPECT_EQ(nt::p_part(4896, 17), 17);
  std::int64_t p = 0;
  int e = 0;
  EXPECT_TRUE(nt::is_prime_power(27, &p, &e));
  EXPECT_EQ(p, 3);
  EXPECT_EQ(e, 3);
  EXPECT_FALSE(nt::is_prime_power(12));
}

TEST(NumberTheory, MultiplicativeOrderByIteration) {
  for (std::int64_t m : {7, 17, 41, 97})
    for (std::int64_t a = 1; a < m; ++a) {
      std::int64_t o = 1, x = a;
      while (x != 1) {
        x = x * a % m;
        ++o;
      }
      EXPECT_EQ(nt::mult_order(a, m), o);
    }
}

TEST(NumberTheory, Valuations) {
  EXPECT_EQ(nt::valuation(BigInt(80), 2), 4);
  EXPECT_EQ(nt::valuation(Rational(3, 8), 2), -3);
  EXPECT_EQ(nt::big_pow(3, 4), 81);
}

TEST(NumberTheory, RootOfUnityTraceIsGaloisSum) {
  // sum of the primitive o-th roots of unity is mu(o); over Q(zeta_m) each appears phi(m)/phi(o) times
  EXPECT_EQ(nt::root_of_unity_trace(1, 4), 2);
  EXPECT_EQ(nt::root_of_unity_trace(2, 4), -2);
  EXPECT_EQ(nt::root_of_unity_trace(4, 4), 0);
  EXPECT_EQ(nt::root_of_unity_trace(3, 6), -1);
  EXPECT_EQ(nt::root_of_unity_trace(6, 6), 1);
}
