#include <gtest/gtest.h>

#include <map>

#include <permrat/permrat.hpp>

using namespace permrat;

namespace {

Rational element_sum(const Group& g, const std::function<Rational(std::size_t)>& f) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += f(i);
  return s;
}

// value of a class function at an element index
Rational at(const ClassFunction& f, std::size_t i) { return f.values[f.group.class_of_element(i)]; }

std::vector<Group> sample_groups() {
  return {symmetric(3), cyclic(4), generalized_quaternion(8), dihedral(8), symmetric(4), sl2(3), dicyclic(12),
          alternating(5), semidirect_cp(7, 3, 2), heisenberg(3), gl2(3), direct_product(cyclic(3), generalized_quaternion(8)),
          cyclic(12), semidihedral(16)};
}

}  // namespace

TEST(RationalTable, OrthogonalityAndCounts) {
  for (const auto& g : sample_groups()) {
    auto t = rational_table(g);
    // one rational irreducible per conjugacy class of cyclic subgroups
    EXPECT_EQ(t.size(), g.cyclic_classes().size());
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) {
        Rational ip = element_sum(g, [&](std::size_t x) {
                        return at(t.row_function(i), x) * at(t.row_function(j), g.inverse_index(x));
                      }) / g.order_int();
        EXPECT_EQ(ip, i == j ? Rational(t.rows[i].field_degree) : Rational(0));
      }
    for (const auto& r : t.rows) EXPECT_EQ(r.values[g.class_of(Permutation(g.degree()))], r.degree * r.field_degree);
  }
}

TEST(RationalTable, IndicatorMatchesSquares) {
  for (const auto& g : sample_groups()) {
    auto t = rational_table(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto f = t.row_function(i);
      Rational s = element_sum(g, [&](std::size_t x) { return at(f, g.multiply(x, x)); }) / g.order_int();
      EXPECT_EQ(s, Rational(t.rows[i].fs * t.rows[i].field_degree));
    }
  }
}

TEST(RationalTable, SmallExamples) {
  auto s3 = rational_table(symmetric(3));
  std::multiset<std::pair<std::int64_t, std::int64_t>> s3rows;
  for (const auto& r : s3.rows) s3rows.insert({r.degree, r.field_degree});
  EXPECT_EQ(s3rows, (std::multiset<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {1, 1}, {2, 1}}));

  auto c3 = rational_table(cyclic(3));
  ASSERT_EQ(c3.size(), 2u);
  std::multiset<std::int64_t> fd;
  for (const auto& r : c3.rows) fd.insert(r.field_degree);
  EXPECT_EQ(fd, (std::multiset<std::int64_t>{1, 2}));

  auto fs_of_degree = [](const RationalTable& t, std::int64_t deg, std::int64_t field) {
    std::multiset<int> out;
    for (const auto& r : t.rows)
      if (r.degree == deg && r.field_degree == field) out.insert(r.fs);
    return out;
  };
  auto q8 = rational_table(generalized_quaternion(8));
  EXPECT_EQ(fs_of_degree(q8, 2, 1), std::multiset<int>{-1});
  EXPECT_EQ(fs_of_degree(q8, 1, 1), (std::multiset<int>{1, 1, 1, 1}));
  auto d8 = rational_table(dihedral(8));
  EXPECT_EQ(fs_of_degree(d8, 2, 1), std::multiset<int>{1});
  auto c4 = rational_table(cyclic(4));
  EXPECT_EQ(fs_of_degree(c4, 1, 2), std::multiset<int>{0});
}

TEST(ClassFunctions, PermutationCharacter) {
  auto g = symmetric(3);
  auto h = subgroup_generated(g, {Permutation::from_cycles("(1,2)", 3)});
  auto pi = perm_character(g, h);
  std::map<std::int64_t, Rational> by_order;
  for (std::size_t k = 0; k < g.num_classes(); ++k) by_order[g.classes()[k].element_order] = pi.values[k];
  EXPECT_EQ(by_order[1], 3);
  EXPECT_EQ(by_order[2], 1);
  EXPECT_EQ(by_order[3], 0);
  // fixed points oracle
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::int64_t fixed = 0;
    for (const auto& x : g.elements())
      fixed += h.contains(x * g.elements()[i] * x.inverse());
    EXPECT_EQ(at(pi, i), Rational(fixed, h.order_int()));
  }
}

TEST(ClassFunctions, FrobeniusReciprocity) {
  for (const auto& g : {symmetric(4), sl2(3), gl2(3)}) {
    auto t = rational_table(g);
    for (const auto& sc : subgroup_classes(g)) {
      auto th = rational_table(sc.group);
      for (std::size_t i = 0; i < th.size(); ++i) {
        auto f = th.row_function(i);
        auto ind = induce(f, g);
        for (std::size_t j = 0; j < t.size(); ++j)
          EXPECT_EQ(inner(ind, t.row_function(j)), inner(f, restrict_to(t.row_function(j), sc.group)));
      }
    }
  }
}

TEST(ClassFunctions, MultiplicityAndDecompose) {
  auto g = symmetric(3);
  auto reg = perm_character(g, trivial_subgroup(g));
  auto t = rational_table(g);
  auto c = decompose(t, reg);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(c[i], t.rows[i].degree);
  EXPECT_EQ(mu(t.row_function(0), t.row_function(0)), 1);
  EXPECT_THROW(mu(t.row_function(0).scaled(2), t.row_function(0)), InputError);
}

TEST(ClassFunctions, NormalisedTraceOnCyclic) {
  EXPECT_EQ(tr_star_on_cyclic(1), 1);
  EXPECT_EQ(tr_star_on_cyclic(2), -1);
  EXPECT_EQ(tr_star_on_cyclic(6), Rational(1, 2));
  EXPECT_EQ(tr_star_on_cyclic(4), 0);
  EXPECT_EQ(tr_star_on_cyclic(3), Rational(-1, 2));
}

TEST(ClassFunctions, CyclicInnerMatchesInduction) {
  for (const auto& g : {symmetric(4), generalized_quaternion(8), sl2(3), dicyclic(12), alternating(5)}) {
    auto subs = subgroup_classes(g);
    for (const auto& a : subs)
      for (const auto& b : subs) {
        auto ta = rational_table(a.group), tb = rational_table(b.group);
        for (std::size_t i = 0; i < ta.size(); i += 2)
          for (std::size_t j = 0; j < tb.size(); j += 2) {
            auto fa = ta.row_function(i), fb = tb.row_function(j);
            EXPECT_EQ(general_induction_inner(g, fa, fb), inner(induce(fa, g), induce(fb, g)));
          }
      }
  }
}
