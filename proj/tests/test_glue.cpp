#include <gtest/gtest.h>

#include <permrat/permrat.hpp>

using namespace permrat;

namespace {

// multiplicities of every rational row in every permutation character, from fixed-point counts
IntMatrix naive_perm_matrix(const RationalTable& t) {
  const Group& g = t.group;
  auto subs = subgroup_classes(g);
  IntMatrix a = zero_matrix(t.size(), subs.size());
  for (std::size_t h = 0; h < subs.size(); ++h) {
    std::vector<Rational> pc(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::int64_t fixed = 0;
      for (const auto& x : g.elements()) fixed += subs[h].group.contains(x * g.elements()[i] * x.inverse());
      pc[i] = Rational(fixed, subs[h].order);
    }
    for (std::size_t r = 0; r < t.size(); ++r) {
      Rational ip = 0, norm = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        Rational v = t.rows[r].values[g.class_of_element(i)];
        ip += v * pc[i];
        norm += v * v;
      }
      a[r][h] = numerator(Rational(ip / norm));
    }
  }
  return a;
}

struct Oracle {
  FinAb ch, c;
};

// CH from the cokernel of all permutation characters; C after rescaling rows by Schur indices
Oracle naive_ch(const Group& g) {
  auto t = rational_table(g);
  auto a = naive_perm_matrix(t);
  Oracle o;
  o.ch = cokernel(a).torsion;
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::int64_t s = t.rows[r].fs == -1 ? 2 : 1;
    for (auto& x : a[r]) {
      EXPECT_EQ(x % s, 0);
      x /= s;
    }
  }
  o.c = cokernel(a).torsion;
  return o;
}

std::vector<Group> glue_groups() {
  return {generalized_quaternion(8), symmetric(4), sl2(3), dicyclic(12), direct_product(cyclic(3), generalized_quaternion(8)),
          direct_product(cyclic(3), sl2(3)), gl2(3), alternating(5), dicyclic(20), semidirect_cp(7, 6, 3),
          direct_product(generalized_quaternion(8), symmetric(3))};
}

IntVector row_vector(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST(Glue, ResIndAgreesWithDirectRoute) {
  std::size_t checked = 0;
  for (const Group& g : {sl2(3), direct_product(cyclic(3), sl2(3)), gl2(3), dicyclic(24), sl2(5)}) {
    GlueOptions opt;
    opt.local.assert_identities = false;
    auto r = compute_ch(g, opt);
    for (const auto& part : r.parts)
      for (const auto& ls : part.locals)
        for (const auto& gs : ls.generators)
          for (const auto& lt : part.locals)
            for (const auto& gt : lt.generators) {
              EXPECT_EQ(resind_multiplicity(g, ls, gs, lt, gt), resind_direct(g, ls, gs, lt, gt));
              ++checked;
            }
  }
  EXPECT_GT(checked, 10u);
}

TEST(Glue, MatchesAllSubgroupsOracle) {
  for (const auto& g : glue_groups()) {
    auto r = compute_ch(g, GlueOptions{});
    auto o = naive_ch(g);
    EXPECT_EQ(r.ch, o.ch) << g.order();
    EXPECT_EQ(r.c, o.c) << g.order();
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_GT(r.checked_entries + (r.ch.trivial() ? 1u : 0u), 0u);
  }
}

TEST(Glue, KnownValues) {
  auto q8 = compute_ch(generalized_quaternion(8), GlueOptions{});
  EXPECT_EQ(q8.ch.invariants, std::vector<std::int64_t>{2});
  EXPECT_TRUE(q8.c.trivial());
  EXPECT_TRUE(compute_ch(symmetric(4), GlueOptions{}).ch.trivial());
  auto c3sl = compute_ch(direct_product(cyclic(3), sl2(3)), GlueOptions{});
  EXPECT_EQ(c3sl.ch.invariants, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(c3sl.c.invariants, std::vector<std::int64_t>{2});
}

TEST(Glue, CertificatesHaveTheStatedOrders) {
  auto g = direct_product(cyclic(3), sl2(3));
  auto r = compute_ch(g, GlueOptions{});
  std::int64_t prod_max = 0;
  for (const auto& part : r.parts)
    for (const auto& c : part.ch_certificates) {
      EXPECT_EQ(c.p, part.p);
      EXPECT_EQ(part.ch.exponent() % c.order, 0);
      prod_max = std::max(prod_max, c.order);
    }
  EXPECT_EQ(prod_max, r.ch.exponent());
}

TEST(PermTest, Examples) {
  {
    auto g = symmetric(3);
    auto t = rational_table(g);
    auto r = compute_ch(g, GlueOptions{});
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto pt = is_virtual_permutation(t, r, row_vector(t.size(), i));
      EXPECT_TRUE(pt.is_perm);
      ASSERT_TRUE(pt.subgroup_combination.has_value());
    }
  }
  {
    auto g = sl2(3);
    auto t = rational_table(g);
    auto r = compute_ch(g, GlueOptions{});
    IntVector regular;
    for (const auto& row : t.rows) regular.push_back(row.degree);
    EXPECT_TRUE(is_virtual_permutation(t, r, regular).is_perm);
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto pt = is_virtual_permutation(t, r, row_vector(t.size(), i));
      bool quaternionic = t.rows[i].fs == -1;
      EXPECT_EQ(pt.is_perm, !quaternionic);
      EXPECT_EQ(pt.obstructions.empty(), !quaternionic);
      EXPECT_EQ(order_in_ch(t, r, row_vector(t.size(), i)), quaternionic ? 2 : 1);
    }
    EXPECT_THROW(is_virtual_permutation(t, r, IntVector{1}), InputError);
  }
}

TEST(PermTest, AgreesWithSolvingOverSubgroups) {
  for (const Group& g : {dicyclic(12), direct_product(cyclic(3), generalized_quaternion(8)), gl2(3)}) {
    auto t = rational_table(g);
    auto r = compute_ch(g, GlueOptions{});
    auto a = naive_perm_matrix(t);
    // every row and every pair sum
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i; j < t.size(); ++j) {
        auto v = row_vector(t.size(), i);
        v[j] += 1;
        EXPECT_EQ(is_virtual_permutation(t, r, v).is_perm, solve_integer(a, v).has_value());
      }
  }
}

TEST(PermBasis, IndexEqualsCH) {
  for (const Group& g : {cyclic(2), generalized_quaternion(8), symmetric(3), sl2(3), direct_product(cyclic(3), sl2(3))}) {
    auto t = rational_table(g);
    auto r = compute_ch(g, GlueOptions{});
    auto basis = perm_basis(t, r);
    EXPECT_EQ(lattice_index(basis, t.size()), r.ch.order());
    auto a = naive_perm_matrix(t);
    for (const auto& b : basis) EXPECT_TRUE(solve_integer(a, b).has_value());
  }
}

TEST(Baseline, AgreesAndDetectsNonDiagonal) {
  auto s4 = symmetric(4);
  auto b = baseline_lattice_engine(s4, rational_table(s4));
  EXPECT_TRUE(b.ch.trivial());
  EXPECT_EQ(b.subgroup_classes, 11u);
  auto g = direct_product(cyclic(3), sl2(3));
  auto bg = baseline_lattice_engine(g, rational_table(g));
  EXPECT_EQ(bg.ch, compute_ch(g, GlueOptions{}).ch);
  EXPECT_FALSE(bg.diagonal);
  EXPECT_TRUE(baseline_lattice_engine(generalized_quaternion(8), rational_table(generalized_quaternion(8))).diagonal);
  EXPECT_FALSE(baseline_supported(symmetric(6)));
  EXPECT_THROW(baseline_lattice_engine(symmetric(6), rational_table(symmetric(6))), UnsupportedError);
}

TEST(Inflation, OrdersArePreserved) {
  for (const Group& g : {direct_product(cyclic(3), sl2(3)), direct_product(cyclic(3), generalized_quaternion(8)), gl2(3)}) {
    auto tg = rational_table(g);
    auto rg = compute_ch(g, GlueOptions{});
    for (const auto& sc : subgroup_classes(g)) {
      if (sc.num_conjugates != 1 || sc.order == 1 || sc.order == g.order_int()) continue;
      // coset action by hand
      const auto& el = g.elements();
      std::vector<std::size_t> coset(el.size(), el.size()), reps;
      for (std::size_t i = 0; i < el.size(); ++i) {
        if (coset[i] != el.size()) continue;
        for (const auto& y : sc.group.elements()) coset[*g.index_of(y * el[i])] = reps.size();
        reps.push_back(i);
      }
      auto image = [&](std::size_t i) {
        std::vector<Point> img(reps.size());
        for (std::size_t c = 0; c < reps.size(); ++c) img[c] = static_cast<Point>(coset[*g.index_of(el[reps[c]] * el[i])]);
        return Permutation(std::move(img));
      };
      std::vector<Permutation> gens;
      for (std::size_t i = 0; i < el.size(); ++i) gens.push_back(image(i));
      Group q(gens);
      auto tq = rational_table(q);
      auto rq = compute_ch(q, GlueOptions{});
      for (std::size_t i = 0; i < tq.size(); ++i) {
        ClassFunction infl{g, {}};
        for (std::size_t k = 0; k < g.num_classes(); ++k)
          infl.values.emplace_back(tq.rows[i].values[q.class_of(image(g.classes()[k].rep))]);
        auto coords = decompose(tg, infl);
        IntVector theta(coords.begin(), coords.end());
        EXPECT_EQ(order_in_ch(tg, rg, theta), order_in_ch(tq, rq, row_vector(tq.size(), i)));
      }
    }
  }
}
