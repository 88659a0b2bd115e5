#pragma once

// Local theory for p-quasi-elementary groups Q = C x| P: orders of rational
// irreducibles in Char_Q(Q)/Perm(Q) by the Berz gcd, cross-checked against
// the dimension formula and, for basic Q, the closed form through A = C A_p.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chartab.hpp"
#include "lattice.hpp"
#include "subgroups.hpp"

namespace permrat {

struct QEDescriptor {
  Group q;
  std::int64_t p = 0;
  Permutation c;  // generator of the cyclic part
  std::int64_t c_order = 1;
  Group sylow;    // P
  Group kernel;   // K = C_P(C)
  bool basic = false;
  std::optional<Permutation> a_p;  // generator of A_p (basic case)
};

/// A linear character of H, given by its kernel N (H/N cyclic of order image_order).
struct MonomialPair {
  Group h;
  Group kernel;
  std::int64_t image_order = 1;
};

// ---- Schur indices ---------------------------------------------------------

enum class SchurMode { constant1, fs_heuristic, user_table };

inline std::string to_string(SchurMode m) {
  switch (m) {
    case SchurMode::constant1: return "constant1";
    case SchurMode::fs_heuristic: return "fs-heuristic";
    case SchurMode::user_table: return "user-table";
  }
  return "?";
}

/// One user-table entry: every key present in `match` must equal the row's value.
/// Keys: q_order, p, c_order, degree, field_degree, fs, ch_order.
struct SchurRule {
  std::map<std::string, std::int64_t> match;
  std::int64_t schur = 1;
};

struct SchurOracle {
  SchurMode mode = SchurMode::fs_heuristic;
  std::vector<SchurRule> rules;

  std::int64_t operator()(const std::map<std::string, std::int64_t>& facts) const {
    std::int64_t s = 1;
    switch (mode) {
      case SchurMode::constant1: s = 1; break;
      case SchurMode::fs_heuristic: s = facts.at("fs") == -1 ? 2 : 1; break;
      case SchurMode::user_table: {
        bool found = false;
        for (const auto& r : rules) {
          bool ok = true;
          for (const auto& [k, v] : r.match) {
            auto it = facts.find(k);
            if (it == facts.end()) throw InputError("Schur table: unknown match key '" + k + "'");
            if (it->second != v) {
              ok = false;
              break;
            }
          }
          if (ok) {
            s = r.schur;
            found = true;
            break;
          }
        }
        if (!found) {
          std::string d;
          for (const auto& [k, v] : facts) d += " " + k + "=" + std::to_string(v);
          throw InputError("Schur table has no entry for row:" + d);
        }
        break;
      }
    }
    if (s < 1 || facts.at("degree") % s != 0) throw InputError("Schur index must divide the character degree");
    return s;
  }
};

struct LocalGenerator {
  std::size_t row = 0;
  std::int64_t ch_order = 1;         // Berz gcd
  std::int64_t dimension_order = 0;  // dimension formula, in Char_Q/Perm
  std::optional<std::int64_t> basic_order;
  std::int64_t schur = 1;
  std::int64_t c_order = 1;
  MonomialPair pair;
};

struct LocalCH {
  QEDescriptor qe;
  RationalTable table;
  std::vector<std::int64_t> ch_orders;  // every row
  std::vector<LocalGenerator> generators;  // rows of order > 1
  std::optional<std::size_t> basic_row;
  std::optional<std::int64_t> basic_order;
  FinAb ch, c;
  std::vector<std::string> warnings;
};

// ---- construction of quasi-elementary subgroups ---------------------------

namespace detail {

inline bool has_normal_elementary_p2(const Group& k, std::int64_t p) {
  const auto& el = k.elements();
  std::vector<std::size_t> order_p;
  for (std::size_t i = 0; i < el.size(); ++i)
    if (k.element_order(i) == p) order_p.push_back(i);
  for (std::size_t a = 0; a < order_p.size(); ++a)
    for (std::size_t b = a + 1; b < order_p.size(); ++b) {
      const auto& x = el[order_p[a]];
      const auto& y = el[order_p[b]];
      if (x * y != y * x) continue;
      Group e({x, y});
      if (e.order() != p * p) continue;
      bool normal = true;
      for (const auto& s : k.generators())
        for (const auto& t : e.generators())
          if (!e.contains(t.conjugate_by(s))) normal = false;
      if (normal) return true;
    }
  return false;
}

inline bool is_d8(const Group& k) {
  if (k.order() != 8) return false;
  std::int64_t inv = 0;
  for (std::size_t i = 0; i < k.size(); ++i) inv += k.element_order(i) == 2;
  return inv == 5;
}

/// Cyclic subgroup of K normal in P, of index <= 2 in K; largest first.
inline std::optional<Permutation> find_a_p(const Group& p, const Group& k) {
  std::optional<Permutation> best;
  std::int64_t best_order = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::int64_t o = k.element_order(i);
    if (o * 2 < static_cast<std::int64_t>(k.size()) || o <= best_order) continue;
    const auto& x = k.elements()[i];
    Group a({x});
    bool normal = true;
    for (const auto& s : p.generators())
      if (!a.contains(x.conjugate_by(s))) {
        normal = false;
        break;
      }
    if (normal) {
      best = x;
      best_order = o;
    }
  }
  return best;
}

}  // namespace detail

/// Describe Q = <c> P; P must normalise <c> and p must not divide ord(c).
inline QEDescriptor make_qe(const Permutation& c, const Group& p_group, std::int64_t p) {
  QEDescriptor d;
  d.p = p;
  d.c = c;
  d.c_order = c.order();
  d.sylow = p_group;
  std::vector<Permutation> gens{c};
  for (const auto& s : p_group.generators()) gens.push_back(s);
  d.q = Group(gens);
  d.kernel = centralizer(p_group, c);
  const Group& k = d.kernel;
  bool cyclic = false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.element_order(i) == static_cast<std::int64_t>(k.size())) cyclic = true;
  d.basic = k.size() == 1 || cyclic || detail::is_d8(k) || !detail::has_normal_elementary_p2(k, p);
  if (d.basic) d.a_p = detail::find_a_p(p_group, k);
  return d;
}

/// Q = C x| Syl_p(N_G(C)) for each class of cyclic C of order prime to p.
inline std::vector<QEDescriptor> maximal_qe_family(const Group& g, std::int64_t p, bool dedup = true) {
  std::vector<QEDescriptor> fam;
  for (const auto& cc : g.cyclic_classes()) {
    if (cc.order % p == 0) continue;
    const Permutation& c = g.class_rep(cc.generator_class);
    Group n = cyclic_normalizer(g, c);
    Group s = sylow(n, p);
    auto d = make_qe(c, s, p);
    bool dup = false;
    if (dedup && g.order() <= 10000)
      for (const auto& e : fam)
        if (e.q.order() == d.q.order() && are_conjugate(g, e.q, d.q)) {
          dup = true;
          break;
        }
    if (!dup) fam.push_back(std::move(d));
  }
  return fam;
}

// ---- class functions of linear characters --------------------------------

/// tr chi for the linear character of H with kernel N: mu(o) phi(m)/phi(o), o = order of hN.
inline ClassFunction linear_trace(const MonomialPair& mp) {
  const auto& h = mp.h;
  ClassFunction f{h, {}};
  for (std::size_t k = 0; k < h.num_classes(); ++k) {
    const auto& x = h.class_rep(k);
    std::int64_t o = 1;
    Permutation y = x;
    while (!mp.kernel.contains(y)) {
      y = y * x;
      ++o;
    }
    f.values.emplace_back(nt::root_of_unity_trace(o, mp.image_order));
  }
  return f;
}

/// Ind_H^Q tr chi as a multiple of a row: returns k with Ind = k * row, or 0 if not proportional.
inline Rational induced_multiple(const MonomialPair& mp, const RationalTable& t, std::size_t row) {
  auto ind = induce(linear_trace(mp), t.group);
  Rational k = ind.values[0] / t.rows[row].values[0];
  for (std::size_t c = 0; c < ind.values.size(); ++c)
    if (ind.values[c] != k * t.rows[row].values[c]) return 0;
  return k;
}

/// Search H <= Q with [Q:H] = degree and a linear chi of H inducing a constituent of the row.
inline MonomialPair monomial_pair(const RationalTable& t, std::size_t row,
                                  const std::vector<SubgroupClass>* classes = nullptr) {
  const Group& q = t.group;
  std::vector<SubgroupClass> own;
  if (!classes) {
    own = subgroup_classes(q);
    classes = &own;
  }
  const std::int64_t deg = t.rows[row].degree;
  const std::int64_t qo = q.order_int();
  for (const auto& hc : *classes) {
    if (hc.order * deg != qo) continue;
    const Group& h = hc.group;
    Group hd = derived_subgroup(h);
    // normal subgroups N >= H' with cyclic quotient, largest quotient first
    std::vector<SubgroupClass> subs = subgroup_classes(h);
    std::sort(subs.begin(), subs.end(), [](const SubgroupClass& a, const SubgroupClass& b) { return a.order < b.order; });
    for (const auto& nc : subs) {
      if (!is_subgroup_of(hd, nc.group)) continue;
      std::int64_t m = hc.order / nc.order;
      bool cyclic = false;
      for (std::size_t i = 0; i < h.size() && !cyclic; ++i) {
        if (h.element_order(i) % m != 0) continue;
        // order of hN is m iff no proper divisor power lands in N
        const Permutation& x = h.elements()[i];
        bool ok = true;
        for (auto [pr, e] : nt::factor(m))
          if (nc.group.contains(x.pow(m / pr))) ok = false;
        cyclic = ok;
      }
      if (!cyclic) continue;
      MonomialPair mp{h, nc.group, m};
      Rational k = induced_multiple(mp, t, row);
      if (k != 0 && denominator(k) == 1) return mp;
    }
  }
  throw InternalError("no monomial pair found for a row of a quasi-elementary group");
}

// ---- local orders ---------------------------------------------------------

/// Order of each row in Char_Q(Q)/Perm(Q): gcd over subgroup classes of the multiplicity in C[Q/H].
inline std::vector<std::int64_t> berz_orders(const RationalTable& t, const std::vector<SubgroupClass>& subs) {
  std::vector<std::int64_t> g(t.size(), 0);
  for (const auto& h : subs) {
    auto pc = perm_character(t.group, h.group);
    for (std::size_t i = 0; i < t.size(); ++i) g[i] = std::gcd(g[i], to_int64(mu(t.row_function(i), pc)));
  }
  return g;
}

/// Dimension formula: order of the row in Char_Q/Perm as phi(n) dim(pi^)/tr tau(1),
/// with pi^ a minimal rational constituent of the restriction to P. Also returns
/// mu(tr tau, Ind_P^Q tr pi) and the predicted value phi(n) tr pi(1)/tr tau(1) of it.
struct DimensionCheck {
  std::int64_t order = 0;
  Rational mu_induced = 0;
  Rational mu_predicted = 0;
};

inline DimensionCheck dimension_formula(const QEDescriptor& d, const RationalTable& t, std::size_t row,
                                        const RationalTable& pt) {
  const Group& q = t.group;
  const auto& r = t.rows[row];
  auto fq = fusion(d.sylow, q);
  // n = [C : C cap ker]
  std::int64_t kernel_in_c = 0;
  Permutation y(q.degree());
  for (std::int64_t i = 0; i < d.c_order; ++i, y = y * d.c)
    if (r.values[q.class_of(y)] == r.values[0]) ++kernel_in_c;
  const std::int64_t n = d.c_order / kernel_in_c;
  auto res = restrict_to(t.row_function(row), d.sylow, fq);
  std::size_t best = pt.size();
  std::int64_t best_dim = 0;
  for (std::size_t j = 0; j < pt.size(); ++j) {
    if (mu(pt.row_function(j), res) == 0) continue;
    std::int64_t s = pt.rows[j].fs == -1 && d.p == 2 ? 2 : 1;  // exact for p-groups
    std::int64_t dim = s * pt.rows[j].values[0];
    if (best == pt.size() || dim < best_dim) {
      best = j;
      best_dim = dim;
    }
  }
  check_internal(best < pt.size(), "restriction to P has no constituent");
  DimensionCheck out;
  Rational o = Rational(nt::euler_phi(n) * best_dim, r.values[0]);
  check_internal(denominator(o) == 1, "dimension formula: non-integral order");
  out.order = static_cast<std::int64_t>(numerator(o));
  auto ind = induce(pt.row_function(best), q, fq);
  out.mu_induced = Rational(mu(t.row_function(row), ind));
  out.mu_predicted = Rational(nt::euler_phi(n) * pt.rows[best].values[0], r.values[0]);
  return out;
}

/// Basic Q: the row of tr Ind_A^Q chi (A = C A_p, chi faithful) and its order.
inline std::optional<std::pair<std::size_t, std::int64_t>> basic_generator(const QEDescriptor& d, const RationalTable& t) {
  if (!d.basic || !d.a_p) return std::nullopt;
  const Group& P = d.sylow;
  Group ap({*d.a_p});
  const std::int64_t ap_order = ap.order_int();
  std::int64_t max_h = 1;
  for (const auto& h : subgroup_classes(P)) {
    bool meets = false;
    for (const auto& x : h.group.elements())
      if (!x.is_identity() && ap.contains(x)) {
        meets = true;
        break;
      }
    if (!meets) max_h = std::max(max_h, h.order);
  }
  const std::int64_t order = P.order_int() / (ap_order * max_h);
  Group a({d.c, *d.a_p});
  MonomialPair mp{a, trivial_subgroup(a), a.order_int()};
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rational k = induced_multiple(mp, t, i);
    if (k != 0) return std::make_pair(i, order);
  }
  throw InternalError("basic generator: induced character is not a multiple of a rational irreducible");
}

struct LocalOptions {
  SchurOracle oracle;
  bool assert_identities = true;
};

inline std::map<std::string, std::int64_t> row_facts(const QEDescriptor& d, const RationalRow& r, std::int64_t ch) {
  return {{"q_order", d.q.order_int()}, {"p", d.p}, {"c_order", d.c_order}, {"degree", r.degree},
          {"field_degree", r.field_degree}, {"fs", r.fs}, {"ch_order", ch}};
}

inline LocalCH local_ch(const QEDescriptor& d, const LocalOptions& opt) {
  LocalCH L;
  L.qe = d;
  L.table = rational_table(d.q);
  auto subs = subgroup_classes(d.q);
  L.ch_orders = berz_orders(L.table, subs);
  const std::int64_t qo = d.q.order_int();

  std::optional<RationalTable> pt;
  if (opt.assert_identities) pt = rational_table(d.sylow);
  if (opt.assert_identities) {
    if (auto b = basic_generator(d, L.table)) {
      L.basic_row = b->first;
      L.basic_order = b->second;
      check_internal(L.ch_orders[b->first] == b->second, "basic generator order differs from the Berz gcd");
    }
  }

  std::vector<std::int64_t> ch_list, c_list;
  for (std::size_t i = 0; i < L.table.size(); ++i) {
    const std::int64_t o = L.ch_orders[i];
    check_internal(o >= 1 && qo % o == 0, "local order does not divide |Q|");
    DimensionCheck dc;
    if (opt.assert_identities) {
      dc = dimension_formula(d, L.table, i, *pt);
      check_internal(dc.order == o, "dimension formula differs from the Berz gcd");
      check_internal(dc.mu_induced == dc.mu_predicted, "mu(rho, Ind_P pi) differs from the dimension formula");
    }
    if (o == 1) continue;
    if (nt::p_part(o, d.p) != o)
      L.warnings.push_back("local order " + std::to_string(o) + " is not a power of " + std::to_string(d.p));
    LocalGenerator gen;
    gen.row = i;
    gen.ch_order = o;
    gen.dimension_order = dc.order;
    if (L.basic_row == i) gen.basic_order = L.basic_order;
    gen.schur = opt.oracle(row_facts(d, L.table.rows[i], o));
    if (o % gen.schur != 0) throw InputError("Schur index does not divide the order in Char_Q/Perm");
    gen.c_order = o / gen.schur;
    gen.pair = monomial_pair(L.table, i, &subs);
    ch_list.push_back(o);
    c_list.push_back(gen.c_order);
    L.generators.push_back(std::move(gen));
  }
  L.ch = FinAb::from_cyclic_orders(ch_list);
  L.c = FinAb::from_cyclic_orders(c_list);
  return L;
}

}  // namespace permrat
