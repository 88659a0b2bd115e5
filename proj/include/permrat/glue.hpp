#pragma once

// Assembly of Char_Q(G)/Perm(G) and R_Q(G)/Perm(G) from quasi-elementary
// locals: Res_T Ind_S multiplicities through cyclic subgroups, images per
// prime, Perm-membership, and the full-lattice baseline.

#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <vector>

#include "chartab.hpp"
#include "lattice.hpp"
#include "qelocal.hpp"
#include "subgroups.hpp"

namespace permrat {

/// Runs f(0..n-1) on a few threads; results in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::size_t nt = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

/// A generator of some local group: (index into the family, index into its generators).
struct GlueLabel {
  std::size_t local = 0;
  std::size_t gen = 0;
};

struct GlueMatrixP {
  std::int64_t p = 0;
  std::vector<GlueLabel> labels;  // both sources and targets
  IntMatrix m;                    // m[t][s] = mu(rho_t, Res_T Ind_S rho_s)
  std::vector<std::int64_t> orders;
};

struct Certificate {
  std::int64_t p = 0;
  std::size_t local = 0;
  std::size_t row = 0;
  std::int64_t order = 0;  // p-part of the order of Ind_Q^G tr tau
};

struct PrimePart {
  std::int64_t p = 0;
  std::vector<LocalCH> locals;
  GlueMatrixP glue;
  FinAb ch, c;
  std::vector<Certificate> ch_certificates, c_certificates;
  std::vector<std::string> warnings;
};

struct CHResult {
  FinAb ch, c;
  std::vector<PrimePart> parts;
  std::string engine = "qe";
  std::vector<std::string> warnings;
  std::size_t checked_entries = 0;  // glue entries confirmed by the direct route
};

namespace detail {

/// sum over cyclic D <= H, D ~ U in G, of mu(n)/phi(n), n = [D : D cap ker chi]; indexed by U.
inline std::vector<Rational> monomial_cyclic_vector(const Group& g, const MonomialPair& mp) {
  const auto& h = mp.h;
  std::vector<Rational> w;
  for (const auto& cc : h.cyclic_classes()) {
    const auto& x = h.class_rep(cc.generator_class);
    std::int64_t n = 1;
    for (Permutation y = x; !mp.kernel.contains(y); y = y * x) ++n;
    w.push_back(tr_star_on_cyclic(n));
  }
  return cyclic_sums(g, h, w);
}

inline std::int64_t image_order(const IntVector& v, const std::vector<std::int64_t>& orders) {
  std::int64_t o = 1;
  for (std::size_t t = 0; t < v.size(); ++t) {
    std::int64_t r = to_int64(v[t] % orders[t]);
    o = std::lcm(o, orders[t] / std::gcd(r < 0 ? -r : r, orders[t]));
  }
  return o;
}

}  // namespace detail

/// mu(rho_t, Res_T Ind_S rho_s) through cyclic subgroups of G (no character table of G).
inline BigInt resind_multiplicity(const Group& g, const LocalCH& s, const LocalGenerator& gs, const LocalCH& t,
                                  const LocalGenerator& gt) {
  auto a1 = detail::monomial_cyclic_vector(g, gs.pair);
  auto a2 = detail::monomial_cyclic_vector(g, gt.pair);
  Rational v = s.table.rows[gs.row].field_degree * cyclic_inner(g, gs.pair.h, a1, gt.pair.h, a2);
  check_internal(denominator(v) == 1, "Res Ind multiplicity is not an integer");
  return numerator(v);
}

/// The same multiplicity by inducing the row to G and restricting.
inline BigInt resind_direct(const Group& g, const LocalCH& s, const LocalGenerator& gs, const LocalCH& t,
                            const LocalGenerator& gt) {
  auto ind = induce(s.table.row_function(gs.row), g);
  auto res = restrict_to(ind, t.qe.q);
  return mu(t.table.row_function(gt.row), res);
}

struct GlueOptions {
  LocalOptions local;
  bool c_mode = true;  // also assemble R_Q/Perm
};

inline PrimePart assemble_p_part(const Group& g, std::int64_t p, const GlueOptions& opt) {
  PrimePart part;
  part.p = p;
  auto family = maximal_qe_family(g, p);
  part.locals = parallel_map<LocalCH>(family.size(), [&](std::size_t i) { return local_ch(family[i], opt.local); });
  for (const auto& l : part.locals)
    for (const auto& w : l.warnings) part.warnings.push_back(w);

  auto& gm = part.glue;
  gm.p = p;
  std::vector<std::vector<Rational>> avec;
  for (std::size_t i = 0; i < part.locals.size(); ++i)
    for (std::size_t j = 0; j < part.locals[i].generators.size(); ++j) {
      gm.labels.push_back({i, j});
      gm.orders.push_back(part.locals[i].generators[j].ch_order);
      avec.push_back(detail::monomial_cyclic_vector(g, part.locals[i].generators[j].pair));
    }
  const std::size_t k = gm.labels.size();
  if (k == 0) return part;
  gm.m = zero_matrix(k, k);
  auto entry = [&](std::size_t t, std::size_t s) {
    const auto& ls = part.locals[gm.labels[s].local];
    const auto& gs = ls.generators[gm.labels[s].gen];
    const auto& lt = part.locals[gm.labels[t].local];
    const auto& gt = lt.generators[gm.labels[t].gen];
    Rational v = ls.table.rows[gs.row].field_degree * cyclic_inner(g, gs.pair.h, avec[s], gt.pair.h, avec[t]);
    check_internal(denominator(v) == 1, "Res Ind multiplicity is not an integer");
    BigInt x = numerator(v);
    if (opt.local.assert_identities)
      check_internal(x == resind_direct(g, ls, gs, lt, gt), "Res Ind multiplicity differs from the direct route");
    return x;
  };
  auto flat = parallel_map<BigInt>(k * k, [&](std::size_t i) { return entry(i / k, i % k); });
  for (std::size_t i = 0; i < k * k; ++i) gm.m[i / k][i % k] = flat[i];

  // well defined: o_s * column s vanishes modulo the target orders
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      check_internal((gm.m[t][s] * gm.orders[s]) % gm.orders[t] == 0, "glue matrix is not a homomorphism");

  auto columns = [&](const IntMatrix& m, const std::vector<std::size_t>& idx) {
    IntMatrix cols;
    for (auto s : idx) {
      IntVector v;
      for (auto t : idx) v.push_back(m[t][s]);
      cols.push_back(std::move(v));
    }
    return cols;
  };
  auto image = [&](const IntMatrix& m, const std::vector<std::size_t>& idx, const std::vector<std::int64_t>& ord,
                   FinAb& out, std::vector<Certificate>& certs, const char* what) {
    std::vector<std::int64_t> sub;
    for (auto i : idx) sub.push_back(ord[i]);
    auto cols = columns(m, idx);
    FinAb img = subgroup_image(sub, cols);
    if (!img.p_prime_part(p).trivial())
      part.warnings.push_back(std::string(what) + ": image at p=" + std::to_string(p) + " has prime-to-p part " +
                              img.p_prime_part(p).to_string());
    out = img.p_part(p);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::int64_t o = nt::p_part(detail::image_order(cols[j], sub), p);
      if (o > 1) {
        const auto& lab = gm.labels[idx[j]];
        certs.push_back({p, lab.local, part.locals[lab.local].generators[lab.gen].row, o});
      }
    }
    std::stable_sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) { return a.order > b.order; });
  };
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  image(gm.m, all, gm.orders, part.ch, part.ch_certificates, "CH");

  if (opt.c_mode) {
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> cord(k), sch(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& gen = part.locals[gm.labels[i].local].generators[gm.labels[i].gen];
      cord[i] = gen.c_order;
      sch[i] = gen.schur;
      if (gen.c_order > 1) idx.push_back(i);
    }
    IntMatrix mc = zero_matrix(k, k);
    for (auto s : idx)
      for (auto t : idx) {
        BigInt v = gm.m[t][s] * sch[s];
        if (v % sch[t] != 0)
          throw InputError("Schur indices are inconsistent: Res Ind of a rational representation is not integral");
        mc[t][s] = v / sch[t];
      }
    if (!idx.empty()) image(mc, idx, cord, part.c, part.c_certificates, "C");
  }
  return part;
}

inline CHResult compute_ch(const Group& g, const GlueOptions& opt) {
  CHResult r;
  const std::int64_t n = g.order_int();
  for (auto p : nt::prime_divisors(n)) {
    auto part = assemble_p_part(g, p, opt);
    r.ch = FinAb::direct_sum(r.ch, part.ch);
    r.c = FinAb::direct_sum(r.c, part.c);
    for (const auto& w : part.warnings) r.warnings.push_back(w);
    r.checked_entries += opt.local.assert_identities ? part.glue.labels.size() * part.glue.labels.size() : 0;
    r.parts.push_back(std::move(part));
  }
  check_internal(n % r.ch.exponent() == 0, "exponent of CH(G) does not divide |G|");
  return r;
}

// ---- Perm(G) inside Char_Q(G) -------------------------------------------

/// The locals map Char_Q(G) -> (+) Char_Q(Q)/Perm(Q) for all primes, in Irr_Q(G) coordinates.
struct LocalsMap {
  IntMatrix m;  // rows: local generators; columns: rows of the table of G
  std::vector<std::int64_t> moduli;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // (part, label index)
};

inline LocalsMap locals_map(const RationalTable& gt, const CHResult& r) {
  LocalsMap lm;
  for (std::size_t pi = 0; pi < r.parts.size(); ++pi) {
    const auto& part = r.parts[pi];
    for (std::size_t li = 0; li < part.glue.labels.size(); ++li) {
      const auto& lab = part.glue.labels[li];
      const auto& loc = part.locals[lab.local];
      const auto& gen = loc.generators[lab.gen];
      auto fus = fusion(loc.qe.q, gt.group);
      IntVector row;
      for (std::size_t i = 0; i < gt.size(); ++i)
        row.push_back(mu(loc.table.row_function(gen.row), restrict_to(gt.row_function(i), loc.qe.q, fus)));
      lm.m.push_back(std::move(row));
      lm.moduli.push_back(gen.ch_order);
      lm.labels.push_back({pi, li});
    }
  }
  return lm;
}

struct PermTest {
  bool is_perm = false;
  std::vector<std::string> obstructions;      // local generators where theta survives
  std::optional<IntVector> subgroup_combination;  // coefficients on subgroup classes (small G)
};

/// Is theta (integer coordinates in Irr_Q(G)) a virtual permutation character?
inline PermTest is_virtual_permutation(const RationalTable& gt, const CHResult& r, const IntVector& theta) {
  if (theta.size() != gt.size()) throw InputError("theta has the wrong number of coordinates");
  auto lm = locals_map(gt, r);
  PermTest out;
  out.is_perm = true;
  for (std::size_t i = 0; i < lm.m.size(); ++i) {
    BigInt v = 0;
    for (std::size_t j = 0; j < theta.size(); ++j) v += lm.m[i][j] * theta[j];
    if (v % lm.moduli[i] != 0) {
      out.is_perm = false;
      const auto& [pi, li] = lm.labels[i];
      const auto& lab = r.parts[pi].glue.labels[li];
      const auto& loc = r.parts[pi].locals[lab.local];
      out.obstructions.push_back("p=" + std::to_string(r.parts[pi].p) + " |Q|=" + loc.qe.q.order().str() +
                                 " row " + std::to_string(loc.generators[lab.gen].row) + ": multiplicity " + v.str() +
                                 " mod " + std::to_string(lm.moduli[i]));
    }
  }
  const Group& g = gt.group;
  if (out.is_perm && (g.is_solvable() ? g.order() <= 2000 : g.order() <= kNaiveSubgroupBound)) {
    auto subs = subgroup_classes(g);
    IntMatrix a = zero_matrix(gt.size(), subs.size());
    for (std::size_t h = 0; h < subs.size(); ++h) {
      auto c = decompose(gt, perm_character(g, subs[h].group));
      for (std::size_t i = 0; i < gt.size(); ++i) a[i][h] = c[i];
    }
    out.subgroup_combination = solve_integer(a, theta);
    check_internal(out.subgroup_combination.has_value(), "locals accept theta but no permutation combination exists");
  }
  return out;
}

/// Z-basis of Perm(G) in Irr_Q(G) coordinates; its index must equal |CH(G)|.
inline IntMatrix perm_basis(const RationalTable& gt, const CHResult& r) {
  auto lm = locals_map(gt, r);
  auto basis = kernel_lattice(lm.m, lm.moduli, gt.size());
  check_internal(lattice_index(basis, gt.size()) == r.ch.order(), "Perm(G) index differs from |CH(G)|");
  return basis;
}

// ---- baseline: all subgroup classes ---------------------------------------

struct BaselineResult {
  FinAb ch;
  std::vector<std::int64_t> row_gcds;  // Berz n_rho * s per row
  bool diagonal = true;                // Perm generated by the scaled rows
  std::size_t subgroup_classes = 0;
};

inline bool baseline_supported(const Group& g) {
  return g.is_solvable() ? g.order() <= 2000 : g.order() <= kNaiveSubgroupBound;
}

inline BaselineResult baseline_lattice_engine(const Group& g, const RationalTable& gt) {
  if (!baseline_supported(g)) throw UnsupportedError("baseline engine: group outside the supported range");
  auto subs = subgroup_classes(g);
  IntMatrix a = zero_matrix(gt.size(), subs.size());
  for (std::size_t h = 0; h < subs.size(); ++h) {
    auto c = decompose(gt, perm_character(g, subs[h].group));
    for (std::size_t i = 0; i < gt.size(); ++i) a[i][h] = c[i];
  }
  BaselineResult b;
  b.subgroup_classes = subs.size();
  auto ck = cokernel(a);
  check_internal(ck.free_rank == 0, "permutation characters do not span Char_Q(G) rationally");
  b.ch = ck.torsion;
  BigInt prod = 1;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    BigInt x = 0;
    for (std::size_t h = 0; h < subs.size(); ++h) x = gcd(x, a[i][h]);
    b.row_gcds.push_back(to_int64(x));
    prod *= x;
  }
  b.diagonal = prod == BigInt(b.ch.order());
  return b;
}

/// Order of theta's class in CH(G), read off from its image in the locals.
inline std::int64_t order_in_ch(const RationalTable& gt, const CHResult& r, const IntVector& theta) {
  auto lm = locals_map(gt, r);
  std::int64_t o = 1;
  for (std::size_t i = 0; i < lm.m.size(); ++i) {
    BigInt v = 0;
    for (std::size_t j = 0; j < theta.size(); ++j) v += lm.m[i][j] * theta[j];
    std::int64_t res = to_int64(((v % lm.moduli[i]) + lm.moduli[i]) % lm.moduli[i]);
    o = std::lcm(o, lm.moduli[i] / std::gcd(res, lm.moduli[i]));
  }
  return o;
}

}  // namespace permrat
