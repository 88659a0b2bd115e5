#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace permrat {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image array.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) { std::iota(images_.begin(), images_.end(), Point{0}); }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) throw InputError("image list is not a bijection");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  /// Composition "apply this first, then rhs": (a * b)(p) = b(a(p)).
  Permutation operator*(const Permutation& rhs) const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  Permutation pow(std::int64_t e) const {
    Permutation base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    Permutation r(degree());
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  /// x^-1 * this * x, i.e. the conjugate acting as x^-1, this, x in turn.
  Permutation conjugate_by(const Permutation& x) const { return x.inverse() * *this * x; }

  std::int64_t order() const {
    std::int64_t ord = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::int64_t len = 0;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// Cycle notation with 1-based points, e.g. "(1,2,3)(4,5)"; identity prints as "()".
  std::string to_cycles() const {
    std::ostringstream os;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      os << '(';
      bool first = true;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (!first) os << ',';
        os << j + 1;
        first = false;
      }
      os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
  }

  /// Parses 1-based cycle notation; separators may be commas or spaces.
  static Permutation from_cycles(std::string_view text, std::size_t degree) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw InputError("cycle notation: expected '('");
      ++i;
      std::vector<Point> cyc;
      while (true) {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        if (i >= text.size()) throw InputError("cycle notation: unterminated cycle");
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::size_t v = 0;
        bool any = false;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + static_cast<std::size_t>(text[i] - '0');
          ++i;
          any = true;
        }
        if (!any || v == 0 || v > degree) throw InputError("cycle notation: bad point");
        if (used[v - 1]) throw InputError("cycle notation: repeated point");
        used[v - 1] = true;
        cyc.push_back(static_cast<Point>(v - 1));
      }
      for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
      skip_ws();
    }
    return Permutation(std::move(img));
  }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace permrat
