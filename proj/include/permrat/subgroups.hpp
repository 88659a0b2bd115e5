#pragma once

// Subgroup classes of small groups, computed on the Cayley table.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "group.hpp"

namespace permrat {

/// Largest group for which we build a full multiplication table.
inline constexpr std::size_t kMaxCayleyOrder = 5000;
/// Non-solvable groups above this order are refused by subgroup_classes.
inline constexpr std::int64_t kNaiveSubgroupBound = 400;

class CayleyTable {
 public:
  explicit CayleyTable(const Group& g) : n_(g.size()) {
    if (n_ > kMaxCayleyOrder) throw UnsupportedError("group too large for a multiplication table");
    const auto& el = g.elements();
    const auto& gens = g.generators();
    // right multiplication by generators, then a spanning tree to fill the table row by row
    std::vector<std::vector<std::uint32_t>> right(gens.size(), std::vector<std::uint32_t>(n_));
    for (std::size_t s = 0; s < gens.size(); ++s)
      for (std::size_t i = 0; i < n_; ++i) right[s][i] = static_cast<std::uint32_t>(g.index_checked(el[i] * gens[s]));
    std::vector<std::uint32_t> parent(n_, 0), via(n_, 0), order{0};
    std::vector<bool> seen(n_, false);
    seen[0] = true;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        auto j = right[s][order[k]];
        if (seen[j]) continue;
        seen[j] = true;
        parent[j] = order[k];
        via[j] = static_cast<std::uint32_t>(s);
        order.push_back(j);
      }
    mul_.assign(n_ * n_, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      mul_[a * n_] = static_cast<std::uint32_t>(a);
      for (std::size_t k = 1; k < order.size(); ++k) {
        auto b = order[k];
        mul_[a * n_ + b] = right[via[b]][mul_[a * n_ + parent[b]]];
      }
    }
    inv_.resize(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul_[a * n_ + b] == 0) {
          inv_[a] = static_cast<std::uint32_t>(b);
          break;
        }
  }

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::uint32_t inv(std::size_t a) const { return inv_[a]; }
  /// x^-1 a x
  std::uint32_t conj(std::size_t a, std::size_t x) const { return (*this)((*this)(inv_[x], a), x); }

  std::uint32_t pow(std::size_t a, std::int64_t e) const {
    std::uint32_t r = 0;
    for (std::int64_t i = 0; i < e; ++i) r = (*this)(r, a);
    return r;
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
};

/// Subset of element indices of a fixed group, as a bitset.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void insert(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool contains(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  bool operator==(const ElementSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Closure of `start` (a subgroup) together with extra generators.
inline ElementSet close_subgroup(const CayleyTable& t, const std::vector<std::size_t>& start,
                                 const std::vector<std::size_t>& gens) {
  ElementSet s(t.size());
  std::vector<std::size_t> list;
  s.insert(0);
  list.push_back(0);
  for (auto x : start)
    if (!s.contains(x)) {
      s.insert(x);
      list.push_back(x);
    }
  for (std::size_t k = 0; k < list.size(); ++k)
    for (auto g : gens) {
      std::size_t y = t(list[k], g);
      if (!s.contains(y)) {
        s.insert(y);
        list.push_back(y);
      }
    }
  return s;
}

struct SubgroupClass {
  Group group;                          // the representative, as a group in its own right
  std::vector<std::size_t> elements;    // element indices in the parent, sorted
  std::vector<std::size_t> generators;  // element indices in the parent
  std::int64_t order = 0;
  std::int64_t normalizer_order = 0;
  std::int64_t num_conjugates = 0;
};

namespace detail {

inline std::vector<std::int64_t> class_signature(const Group& g, const ElementSet& s) {
  std::vector<std::int64_t> sig(g.num_classes(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (s.contains(i)) ++sig[g.class_of_element(i)];
  return sig;
}

/// Does some x conjugate a (with generators ga) onto b?
inline bool conjugate_sets(const CayleyTable& t, const std::vector<std::size_t>& ga, const ElementSet& b) {
  for (std::size_t x = 0; x < t.size(); ++x) {
    bool ok = true;
    for (auto a : ga)
      if (!b.contains(t.conj(a, x))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// Conjugacy classes of subgroups, ordered by subgroup order then discovery.
/// Solvable groups use the cyclic extension method; others are searched by
/// joining cyclic subgroups onto known classes (|G| <= kNaiveSubgroupBound).
inline std::vector<SubgroupClass> subgroup_classes(const Group& g) {
  const bool solvable = g.is_solvable();
  if (!solvable && g.order_int() > kNaiveSubgroupBound)
    throw UnsupportedError("subgroup classes: non-solvable group above the naive bound");
  CayleyTable t(g);
  const std::size_t n = t.size();

  struct Rec {
    ElementSet set;
    std::vector<std::size_t> gens;
    std::vector<std::int64_t> sig;
    std::size_t order;
  };
  std::vector<Rec> reps;
  std::map<std::pair<std::size_t, std::vector<std::int64_t>>, std::vector<std::size_t>> by_key;

  auto add = [&](ElementSet s, std::vector<std::size_t> gens) {
    auto sig = detail::class_signature(g, s);
    std::size_t ord = s.count();
    auto& bucket = by_key[{ord, sig}];
    for (auto r : bucket)
      if (reps[r].set == s || detail::conjugate_sets(t, gens, reps[r].set)) return;
    bucket.push_back(reps.size());
    reps.push_back({std::move(s), std::move(gens), std::move(sig), ord});
  };

  add(close_subgroup(t, {}, {}), {});
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const std::vector<std::size_t> hel = reps[r].set.members();
    const std::vector<std::size_t> hgens = reps[r].gens;
    const ElementSet hset = reps[r].set;
    std::vector<bool> done(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (done[x] || hset.contains(x)) continue;
      // every generator of <x> gives the same join
      std::int64_t o = g.element_order(x);
      std::uint32_t y = static_cast<std::uint32_t>(x);
      for (std::int64_t e = 1; e <= o; ++e, y = t(y, x))
        if (std::gcd(e, o) == 1) done[y] = true;
      if (solvable) {
        bool normalizes = true;
        for (auto h : hgens)
          if (!hset.contains(t.conj(h, x))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        std::int64_t k = 1;
        for (std::uint32_t z = static_cast<std::uint32_t>(x); !hset.contains(z); z = t(z, x)) ++k;
        if (!nt::is_prime(k)) continue;
      }
      auto gens = hgens;
      gens.push_back(x);
      // when x normalizes H, right multiplication by x alone already closes H<x>
      auto k = solvable ? close_subgroup(t, hel, {x}) : close_subgroup(t, hel, gens);
      add(std::move(k), std::move(gens));
    }
  }

  std::stable_sort(reps.begin(), reps.end(), [](const Rec& a, const Rec& b) { return a.order < b.order; });
  std::vector<SubgroupClass> out;
  for (auto& rec : reps) {
    SubgroupClass sc;
    sc.elements = rec.set.members();
    sc.generators = rec.gens;
    sc.order = static_cast<std::int64_t>(rec.order);
    std::int64_t norm = 0;
    for (std::size_t x = 0; x < n; ++x) {
      bool ok = true;
      for (auto a : rec.gens)
        if (!rec.set.contains(t.conj(a, x))) {
          ok = false;
          break;
        }
      norm += ok;
    }
    sc.normalizer_order = norm;
    sc.num_conjugates = static_cast<std::int64_t>(n) / norm;
    std::vector<Permutation> gp, ep;
    for (auto i : rec.gens) gp.push_back(g.elements()[i]);
    if (gp.empty()) gp.push_back(Permutation(g.degree()));
    for (auto i : sc.elements) ep.push_back(g.elements()[i]);
    sc.group = Group::from_elements(std::move(gp), std::move(ep));
    out.push_back(std::move(sc));
  }
  return out;
}

/// Are H and K (subgroups of G) conjugate in G?
inline bool are_conjugate(const Group& g, const Group& h, const Group& k) {
  if (h.order() != k.order()) return false;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& s : h.generators())
      if (!k.contains(s.conjugate_by(x))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace permrat
