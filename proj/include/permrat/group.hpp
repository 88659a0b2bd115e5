#pragma once

// Permutation-group engine: stabilizer chains, explicit element tables,
// conjugacy classes, power maps and cyclic-subgroup classes.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"
#include "permutation.hpp"

namespace permrat {

/// Groups larger than this are handled by the stabilizer chain only.
inline constexpr std::int64_t kMaxEnumeratedOrder = 200000;

struct ConjugacyClass {
  std::size_t rep = 0;  // element index of the representative
  std::int64_t size = 0;
  std::int64_t element_order = 0;
  std::int64_t centralizer_order = 0;
};

/// A conjugacy class of cyclic subgroups, described through the element classes generating it.
struct CyclicClass {
  std::size_t generator_class = 0;
  std::int64_t order = 0;
  std::int64_t normalizer_order = 0;
  std::int64_t num_conjugates = 0;
  std::vector<std::size_t> element_classes;  // classes of generators, sorted
};

namespace detail {

struct StabLevel {
  Point base = 0;
  std::vector<Permutation> gens;
  std::vector<std::optional<Permutation>> transversal;  // u with base^u = point
  std::vector<Point> orbit;
};

class StabChain {
 public:
  explicit StabChain(const std::vector<Permutation>& gens, std::size_t degree) : degree_(degree) {
    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      auto r = sift(g, 0);
      if (!r.is_identity()) extend(0, r);
    }
  }

  BigInt order() const {
    BigInt o = 1;
    for (const auto& l : levels_) o *= static_cast<std::int64_t>(l.orbit.size());
    return o;
  }

  bool contains(const Permutation& g) const { return g.degree() == degree_ && sift(g, 0).is_identity(); }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<std::size_t> orbit_lengths() const {
    std::vector<std::size_t> v;
    for (const auto& l : levels_) v.push_back(l.orbit.size());
    return v;
  }

 private:
  Permutation sift(Permutation h, std::size_t from) const {
    for (std::size_t j = from; j < levels_.size(); ++j) {
      const auto& lv = levels_[j];
      Point x = h(lv.base);
      if (!lv.transversal[x]) return h;
      h = h * lv.transversal[x]->inverse();
    }
    return h;
  }

  void rebuild_orbit(StabLevel& lv) {
    lv.transversal.assign(degree_, std::nullopt);
    lv.orbit.clear();
    lv.transversal[lv.base] = Permutation(degree_);
    lv.orbit.push_back(lv.base);
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      Point x = lv.orbit[k];
      for (const auto& s : lv.gens) {
        Point y = s(x);
        if (!lv.transversal[y]) {
          lv.transversal[y] = *lv.transversal[x] * s;
          lv.orbit.push_back(y);
        }
      }
    }
  }

  void extend(std::size_t i, const Permutation& g) {
    if (i == levels_.size()) {
      StabLevel lv;
      for (Point p = 0; p < degree_; ++p)
        if (g(p) != p) {
          lv.base = p;
          break;
        }
      levels_.push_back(std::move(lv));
    }
    levels_[i].gens.push_back(g);
    rebuild_orbit(levels_[i]);
    for (std::size_t k = 0; k < levels_[i].orbit.size(); ++k) {
      Point x = levels_[i].orbit[k];
      for (std::size_t si = 0; si < levels_[i].gens.size(); ++si) {
        const Permutation& s = levels_[i].gens[si];
        Permutation h = *levels_[i].transversal[x] * s * levels_[i].transversal[s(x)]->inverse();
        if (h.is_identity()) continue;
        auto r = sift(h, i + 1);
        if (!r.is_identity()) extend(i + 1, r);
      }
    }
  }

  std::size_t degree_;
  std::vector<StabLevel> levels_;
};

struct GroupState {
  std::vector<Permutation> gens;
  std::size_t degree = 0;

  std::once_flag chain_once;
  std::unique_ptr<StabChain> chain;

  std::once_flag elements_once;
  std::vector<Permutation> elements;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  std::vector<std::int64_t> element_orders;

  std::once_flag classes_once;
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> class_elements;
  std::vector<std::vector<std::size_t>> powers;  // powers[k][t] = class of rep_k^t, t < ord

  std::once_flag cyclic_once;
  std::vector<CyclicClass> cyclic;
  std::vector<std::size_t> cyclic_of_class;

  std::once_flag solvable_once;
  bool solvable = false;
};

}  // namespace detail

/// A finite permutation group. Immutable after construction; lazy caches are
/// thread-safe and shared between copies.
class Group {
 public:
  Group() = default;

  explicit Group(std::vector<Permutation> generators) {
    if (generators.empty()) throw InputError("group needs at least one generator");
    std::size_t deg = generators.front().degree();
    for (const auto& g : generators)
      if (g.degree() != deg) throw InputError("generators have different degrees");
    s_ = std::make_shared<detail::GroupState>();
    s_->gens = std::move(generators);
    s_->degree = deg;
  }

  /// Builds the subgroup whose elements (as permutations) are already known.
  static Group from_elements(std::vector<Permutation> gens, std::vector<Permutation> elems) {
    Group h(std::move(gens));
    std::call_once(h.s_->elements_once, [&] {
      auto& st = *h.s_;
      st.elements = std::move(elems);
      // identity first
      auto id = Permutation(st.degree);
      auto it = std::find(st.elements.begin(), st.elements.end(), id);
      std::iter_swap(st.elements.begin(), it);
      st.index.reserve(st.elements.size() * 2);
      for (std::size_t i = 0; i < st.elements.size(); ++i) st.index.emplace(st.elements[i], i);
      st.element_orders.resize(st.elements.size());
      for (std::size_t i = 0; i < st.elements.size(); ++i) st.element_orders[i] = st.elements[i].order();
    });
    return h;
  }

  std::size_t degree() const { return s_->degree; }
  const std::vector<Permutation>& generators() const { return s_->gens; }

  BigInt order() const { return chain().order(); }

  /// Order as a machine integer; throws when the group is beyond desk scale.
  std::int64_t order_int() const {
    BigInt o = order();
    if (o > BigInt(std::int64_t{1} << 50)) throw UnsupportedError("group order too large");
    return static_cast<std::int64_t>(o);
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree()) return false;
    if (enumerable()) {
      ensure_elements();
      return s_->index.count(g) > 0;
    }
    return chain().contains(g);
  }

  const detail::StabChain& chain() const {
    std::call_once(s_->chain_once, [&] { s_->chain = std::make_unique<detail::StabChain>(s_->gens, s_->degree); });
    return *s_->chain;
  }

  bool enumerable() const { return order() <= kMaxEnumeratedOrder; }

  const std::vector<Permutation>& elements() const {
    ensure_elements();
    return s_->elements;
  }

  std::size_t size() const { return elements().size(); }

  std::optional<std::size_t> index_of(const Permutation& g) const {
    ensure_elements();
    auto it = s_->index.find(g);
    if (it == s_->index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_checked(const Permutation& g) const {
    auto i = index_of(g);
    if (!i) throw InputError("permutation is not a group element");
    return *i;
  }

  std::int64_t element_order(std::size_t i) const {
    ensure_elements();
    return s_->element_orders[i];
  }

  std::size_t multiply(std::size_t a, std::size_t b) const { return index_checked(elements()[a] * elements()[b]); }
  std::size_t inverse_index(std::size_t a) const { return index_checked(elements()[a].inverse()); }

  std::int64_t exponent() const {
    ensure_elements();
    std::int64_t e = 1;
    for (auto o : s_->element_orders) e = std::lcm(e, o);
    return e;
  }

  // ---- conjugacy classes ------------------------------------------------

  const std::vector<ConjugacyClass>& classes() const {
    ensure_classes();
    return s_->classes;
  }
  std::size_t num_classes() const { return classes().size(); }
  std::size_t class_of_element(std::size_t i) const {
    ensure_classes();
    return s_->class_of[i];
  }
  std::size_t class_of(const Permutation& g) const { return class_of_element(index_checked(g)); }
  const std::vector<std::size_t>& class_elements(std::size_t k) const {
    ensure_classes();
    return s_->class_elements[k];
  }
  const Permutation& class_rep(std::size_t k) const { return elements()[classes()[k].rep]; }

  /// Class of rep_k^t; t may be negative.
  std::size_t power_class(std::size_t k, std::int64_t t) const {
    ensure_classes();
    const auto& row = s_->powers[k];
    return row[static_cast<std::size_t>(nt::floor_mod(t, static_cast<std::int64_t>(row.size())))];
  }

  std::vector<std::size_t> power_map(std::int64_t t) const {
    std::vector<std::size_t> m(num_classes());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = power_class(k, t);
    return m;
  }

  std::size_t inverse_class(std::size_t k) const { return power_class(k, -1); }

  // ---- cyclic subgroups ---------------------------------------------------

  const std::vector<CyclicClass>& cyclic_classes() const {
    ensure_cyclic();
    return s_->cyclic;
  }
  std::size_t cyclic_class_of_class(std::size_t k) const {
    ensure_cyclic();
    return s_->cyclic_of_class[k];
  }
  std::size_t cyclic_class_of(const Permutation& g) const { return cyclic_class_of_class(class_of(g)); }

  bool is_solvable() const;

  bool same_state(const Group& o) const { return s_ == o.s_; }

 private:
  void ensure_elements() const {
    std::call_once(s_->elements_once, [&] {
      if (!enumerable()) throw UnsupportedError("group too large for element enumeration");
      auto& st = *s_;
      std::size_t n = static_cast<std::size_t>(order());
      st.elements.reserve(n);
      st.index.reserve(n * 2);
      Permutation id(st.degree);
      st.elements.push_back(id);
      st.index.emplace(id, 0);
      for (std::size_t k = 0; k < st.elements.size(); ++k) {
        for (const auto& g : st.gens) {
          Permutation y = st.elements[k] * g;
          if (st.index.emplace(y, st.elements.size()).second) st.elements.push_back(std::move(y));
        }
      }
      check_internal(st.elements.size() == n, "element enumeration disagrees with stabilizer chain");
      st.element_orders.resize(n);
      for (std::size_t i = 0; i < n; ++i) st.element_orders[i] = st.elements[i].order();
    });
  }

  void ensure_classes() const {
    ensure_elements();
    std::call_once(s_->classes_once, [&] {
      auto& st = *s_;
      const std::size_t n = st.elements.size();
      constexpr std::size_t none = static_cast<std::size_t>(-1);
      std::vector<std::size_t> raw(n, none);
      std::vector<std::vector<std::size_t>> orbits;
      std::vector<Permutation> ginv;
      for (const auto& g : st.gens) ginv.push_back(g.inverse());
      for (std::size_t i = 0; i < n; ++i) {
        if (raw[i] != none) continue;
        std::vector<std::size_t> orb{i};
        raw[i] = orbits.size();
        for (std::size_t k = 0; k < orb.size(); ++k) {
          for (std::size_t gi = 0; gi < st.gens.size(); ++gi) {
            std::size_t j = st.index.at(ginv[gi] * st.elements[orb[k]] * st.gens[gi]);
            if (raw[j] == none) {
              raw[j] = orbits.size();
              orb.push_back(j);
            }
          }
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
      }
      // canonical order: identity first, then by (element order, size, representative index)
      std::vector<std::size_t> perm(orbits.size());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        auto ka = std::make_tuple(st.element_orders[orbits[a][0]], orbits[a].size(), orbits[a][0]);
        auto kb = std::make_tuple(st.element_orders[orbits[b][0]], orbits[b].size(), orbits[b][0]);
        return ka < kb;
      });
      std::int64_t order = static_cast<std::int64_t>(n);
      st.class_of.assign(n, 0);
      for (std::size_t c = 0; c < perm.size(); ++c) {
        auto& orb = orbits[perm[c]];
        ConjugacyClass cc;
        cc.rep = orb[0];
        cc.size = static_cast<std::int64_t>(orb.size());
        cc.element_order = st.element_orders[orb[0]];
        cc.centralizer_order = order / cc.size;
        for (auto e : orb) st.class_of[e] = c;
        st.classes.push_back(cc);
        st.class_elements.push_back(std::move(orb));
      }
      st.powers.resize(st.classes.size());
      for (std::size_t c = 0; c < st.classes.size(); ++c) {
        const auto& x = st.elements[st.classes[c].rep];
        auto o = static_cast<std::size_t>(st.classes[c].element_order);
        Permutation cur(st.degree);
        st.powers[c].resize(o);
        for (std::size_t t = 0; t < o; ++t) {
          st.powers[c][t] = st.class_of[st.index.at(cur)];
          cur = cur * x;
        }
      }
    });
  }

  void ensure_cyclic() const {
    ensure_classes();
    std::call_once(s_->cyclic_once, [&] {
      auto& st = *s_;
      constexpr std::size_t none = static_cast<std::size_t>(-1);
      st.cyclic_of_class.assign(st.classes.size(), none);
      for (std::size_t k = 0; k < st.classes.size(); ++k) {
        if (st.cyclic_of_class[k] != none) continue;
        std::int64_t o = st.classes[k].element_order;
        CyclicClass cc;
        cc.generator_class = k;
        cc.order = o;
        std::int64_t self = 0;
        for (std::int64_t t = 1; t <= o; ++t) {
          if (std::gcd(t, o) != 1) continue;
          std::size_t l = st.powers[k][static_cast<std::size_t>(t % o)];
          if (l == k) ++self;
          if (std::find(cc.element_classes.begin(), cc.element_classes.end(), l) == cc.element_classes.end())
            cc.element_classes.push_back(l);
        }
        std::sort(cc.element_classes.begin(), cc.element_classes.end());
        cc.normalizer_order = st.classes[k].centralizer_order * self;
        cc.num_conjugates = static_cast<std::int64_t>(st.elements.size()) / cc.normalizer_order;
        for (auto l : cc.element_classes) st.cyclic_of_class[l] = st.cyclic.size();
        st.cyclic.push_back(std::move(cc));
      }
    });
  }

  std::shared_ptr<detail::GroupState> s_;
};

// ---- subgroup constructions by element filtering ---------------------------

/// Smallest generating set found greedily (in index order) for a subset known to be a subgroup.
inline std::vector<Permutation> greedy_generators(const std::vector<Permutation>& elems) {
  std::vector<Permutation> gens;
  if (elems.empty()) return gens;
  std::size_t deg = elems.front().degree();
  std::unordered_map<Permutation, bool, PermutationHash> closure;
  std::vector<Permutation> list{Permutation(deg)};
  closure.emplace(list.front(), true);
  for (const auto& e : elems) {
    if (closure.count(e)) continue;
    gens.push_back(e);
    // re-close under all generators
    for (std::size_t k = 0; k < list.size(); ++k) {
      for (const auto& g : gens) {
        Permutation y = list[k] * g;
        if (closure.emplace(y, true).second) list.push_back(std::move(y));
      }
    }
    if (list.size() == elems.size()) break;
  }
  if (gens.empty()) gens.push_back(Permutation(deg));
  return gens;
}

/// Subgroup of G given by element indices (must be closed under multiplication).
inline Group subgroup_from_indices(const Group& g, const std::vector<std::size_t>& idx) {
  std::vector<Permutation> elems;
  elems.reserve(idx.size());
  for (auto i : idx) elems.push_back(g.elements()[i]);
  auto gens = greedy_generators(elems);
  return Group::from_elements(std::move(gens), std::move(elems));
}

inline Group subgroup_generated(const Group& g, std::vector<Permutation> gens) {
  for (const auto& x : gens)
    if (!g.contains(x)) throw InputError("generator is not in the parent group");
  if (gens.empty()) gens.push_back(Permutation(g.degree()));
  return Group(std::move(gens));
}

inline Group trivial_subgroup(const Group& g) { return Group({Permutation(g.degree())}); }

inline Group centralizer(const Group& g, const Permutation& x) {
  std::vector<std::size_t> idx;
  const auto& el = g.elements();
  const std::size_t deg = g.degree();
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto& y = el[i];
    bool ok = true;
    for (Point p = 0; p < deg && ok; ++p) ok = x(y(p)) == y(x(p));
    if (ok) idx.push_back(i);
  }
  return subgroup_from_indices(g, idx);
}

/// Elements of G normalizing H (H enumerated, same degree).
inline std::vector<std::size_t> normalizer_indices(const Group& g, const Group& h) {
  std::vector<std::size_t> idx;
  const auto& el = g.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    bool ok = true;
    for (const auto& s : h.generators()) {
      if (!h.index_of(s.conjugate_by(el[i]))) {
        ok = false;
        break;
      }
    }
    if (ok) idx.push_back(i);
  }
  return idx;
}

inline Group normalizer(const Group& g, const Group& h) { return subgroup_from_indices(g, normalizer_indices(g, h)); }

/// Normalizer of the cyclic subgroup <x>: elements y with y^-1 x y a generator of <x>.
inline Group cyclic_normalizer(const Group& g, const Permutation& x) {
  std::int64_t o = x.order();
  std::vector<Permutation> targets;
  for (std::int64_t t = 1; t <= o; ++t)
    if (std::gcd(t, o) == 1) targets.push_back(x.pow(t));
  std::vector<std::size_t> idx;
  const auto& el = g.elements();
  const std::size_t deg = g.degree();
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto& y = el[i];
    for (const auto& xt : targets) {
      // y^-1 x y = xt  <=>  x y = y xt
      bool ok = true;
      for (Point p = 0; p < deg && ok; ++p) ok = y(x(p)) == xt(y(p));
      if (ok) {
        idx.push_back(i);
        break;
      }
    }
  }
  return subgroup_from_indices(g, idx);
}

/// A Sylow p-subgroup; the trivial subgroup when p does not divide |G|.
inline Group sylow(const Group& g, std::int64_t p) {
  std::int64_t n = g.order_int();
  std::int64_t target = nt::p_part(n, p);
  std::vector<Permutation> gens;
  Group s = trivial_subgroup(g);
  while (s.order_int() < target) {
    auto norm = normalizer_indices(g, s);
    bool grew = false;
    for (auto i : norm) {
      std::int64_t o = g.element_order(i);
      std::int64_t pp = nt::p_part(o, p);
      if (pp == 1) continue;
      Permutation y = g.elements()[i].pow(o / pp);
      if (s.index_of(y)) continue;
      gens.push_back(y);
      s = Group(gens);
      grew = true;
      break;
    }
    check_internal(grew, "Sylow search stalled");
  }
  return s;
}

inline bool is_subgroup_of(const Group& h, const Group& g) {
  for (const auto& x : h.generators())
    if (!g.contains(x)) return false;
  return true;
}

/// Action of G on the right cosets of a normal subgroup N; its image is G/N.
inline Group quotient_action(const Group& g, const Group& n) {
  const auto& el = g.elements();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset(el.size(), none);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (coset[i] != none) continue;
    for (const auto& y : n.elements()) coset[g.index_checked(y * el[i])] = reps.size();
    reps.push_back(i);
  }
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) img[c] = static_cast<Point>(coset[g.index_checked(el[reps[c]] * s)]);
    gens.emplace_back(std::move(img));
  }
  return Group(std::move(gens));
}

/// Normal closure in G of the given elements.
inline Group normal_closure(const Group& g, const std::vector<Permutation>& seeds) {
  std::vector<Permutation> gens;
  Group h = trivial_subgroup(g);
  auto add = [&](const Permutation& y) {
    if (y.is_identity() || h.contains(y)) return;
    gens.push_back(y);
    h = Group(gens);
  };
  for (const auto& y : seeds) add(y);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (const auto& s : g.generators()) add(gens[k].conjugate_by(s));
  return h;
}

inline Group derived_subgroup(const Group& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (const auto& a : gens)
    for (const auto& b : gens) comms.push_back(a.inverse() * b.inverse() * a * b);
  return normal_closure(g, comms);
}

inline bool Group::is_solvable() const {
  std::call_once(s_->solvable_once, [&] {
    Group cur = *this;
    while (true) {
      if (cur.order() == 1) {
        s_->solvable = true;
        return;
      }
      Group d = derived_subgroup(cur);
      if (d.order() == cur.order()) {
        s_->solvable = false;
        return;
      }
      cur = d;
    }
  });
  return s_->solvable;
}

}  // namespace permrat
