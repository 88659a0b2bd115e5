#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <set>

#include <permrat/permrat.hpp>

using namespace permrat;

namespace {

bool prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// smallest prime factor l of p^e - 1 (trial division) with p of multiplicative order exactly e mod l
std::optional<std::int64_t> primitive_divisor(std::int64_t p, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= p;
  v -= 1;
  std::vector<std::int64_t> factors;
  for (std::int64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) {
      factors.push_back(d);
      while (v % d == 0) v /= d;
    }
  if (v > 1) factors.push_back(v);
  for (auto l : factors) {
    std::int64_t x = p % l, o = 1;
    while (x != 1) {
      x = x * (p % l) % l;
      ++o;
    }
    if (o == e) return l;
  }
  return std::nullopt;
}

int v2(std::int64_t x) {
  int k = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++k;
  }
  return k;
}

}  // namespace

TEST(Zsigmondy, MatchesSearch) {
  for (std::int64_t p = 2; p <= 50; ++p) {
    if (!prime(p)) continue;
    for (int e = 2; e <= 12; ++e) {
      if (e * std::log2(static_cast<double>(p)) > 50) continue;  // trial division stays fast
      EXPECT_EQ(zsigmondy(p, e), primitive_divisor(p, e)) << p << "^" << e;
    }
  }
  EXPECT_EQ(zsigmondy(3, 4), 5);
  EXPECT_EQ(zsigmondy(5, 2), 3);
  EXPECT_FALSE(zsigmondy(2, 6).has_value());
  EXPECT_FALSE(zsigmondy(7, 2).has_value());
  EXPECT_THROW(zsigmondy(4, 3), InputError);
}

TEST(PSLCertificate, ParametersAndDivisors) {
  for (int k = 4; k <= 12; k += 2)
    for (std::int64_t p = 3; p <= 37; p += 2) {
      if (!prime(p)) continue;
      auto c = psl_certificate(k, p);
      EXPECT_TRUE(c.valid) << k << "," << p;
      EXPECT_EQ(c.claimed_divisor, std::int64_t{1} << std::min(v2(k), v2(p - 1)));
      EXPECT_GE(c.certified_divisor, c.claimed_divisor);
      EXPECT_EQ(c.n, v2(p - 1));
      EXPECT_EQ(c.m, v2(k - 2));
      // unsigned wraparound keeps the low bits, which is all the valuation needs
      std::uint64_t x = 1;
      for (int i = 0; i < k - 2; ++i) x *= static_cast<std::uint64_t>(p);
      EXPECT_EQ(c.N, std::countr_zero(x - 1));
      EXPECT_EQ(c.case_tag, (k == 4 && p % 4 == 3) ? "B" : "A");
      if (c.case_tag == "A" && (k - 2) * std::log2(static_cast<double>(p)) < 50) EXPECT_EQ(c.l, primitive_divisor(p, k - 2));
      EXPECT_EQ(c.final_val, c.case_tag == "A" ? v2(p - 1) - std::min(v2(k), v2(p - 1)) : 0);
      EXPECT_GE(c.local_order_val - c.final_val, std::countr_zero(static_cast<std::uint64_t>(c.claimed_divisor)));
      for (const auto& id : c.identities) EXPECT_TRUE(id.holds) << id.name;
    }
}

TEST(PSLCertificate, SmallCases) {
  auto a = psl_certificate(4, 5);
  EXPECT_EQ(a.case_tag, "A");
  EXPECT_EQ(a.claimed_divisor, 4);
  EXPECT_EQ(a.l, 3);
  auto b = psl_certificate(4, 3);
  EXPECT_EQ(b.case_tag, "B");
  EXPECT_EQ(b.claimed_divisor, 2);
  EXPECT_TRUE(b.externally_sourced);
  auto c = psl_certificate(6, 3);
  EXPECT_EQ(c.l, 5);
  EXPECT_EQ(c.claimed_divisor, 2);
  EXPECT_EQ(psl_certificate(8, 17).claimed_divisor, 8);
  EXPECT_EQ(psl_certificate(3, 7).case_tag, "none");
  EXPECT_EQ(psl_certificate(6, 2).case_tag, "none");
  EXPECT_THROW(psl_certificate(4, 9), InputError);
}

TEST(PSLCertificate, ScanIsValid) {
  auto scan = psl_family_scan(16, 97);
  std::set<std::int64_t> divisors;
  for (const auto& r : scan) {
    EXPECT_TRUE(r.valid) << r.k << "," << r.p;
    divisors.insert(r.claimed_divisor);
    EXPECT_EQ(r.schur_trivial, v2(r.k) > v2(r.p - 1));
  }
  EXPECT_TRUE(divisors.count(2) && divisors.count(4) && divisors.count(8) && divisors.count(16));
}

TEST(SL2Sylow, MatchesComputedSylow) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27}) {
    auto r = sl2_sylow2_check(q);
    EXPECT_TRUE(r.is_sylow && r.type_ok && r.iota_ok && r.matches_sylow) << q;
    Group s(r.generators);
    auto full = sl2(q);
    EXPECT_EQ(s.order(), nt::p_part(full.order_int(), 2));
    std::int64_t involutions = 0;
    for (std::size_t i = 0; i < s.size(); ++i) involutions += s.element_order(i) == 2;
    if (q % 2 == 0) {
      EXPECT_EQ(r.type, "elementary abelian");
      EXPECT_EQ(involutions + 1, s.order_int());
    } else {
      EXPECT_EQ(r.type, "generalized quaternion");
      EXPECT_EQ(involutions, 1);
      EXPECT_EQ(r.N, v2(q * q - 1));
    }
  }
}
