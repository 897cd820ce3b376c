#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/qseries.hpp"

namespace fatpoints {

/// Monomials of a fixed degree in a fixed number of variables, in
/// lexicographic order on exponent tuples with larger leading exponents
/// first: x0^d, x0^{d-1} x1, ..., x_{v-1}^d. Column order of every
/// interpolation matrix.
class MonomialBasis {
 public:
  MonomialBasis(int variables, Int degree) : vars_(variables), degree_(degree) {
    if (variables < 1) throw domain_error("need at least one variable");
    if (degree < 0) return;
    std::vector<Int> e(static_cast<std::size_t>(variables), 0);
    enumerate(e, 0, degree);
  }

  int variables() const noexcept { return vars_; }
  Int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return exps_.size() / static_cast<std::size_t>(vars_); }

  std::span<const Int> operator[](std::size_t i) const {
    return std::span<const Int>(exps_).subspan(i * static_cast<std::size_t>(vars_), static_cast<std::size_t>(vars_));
  }

  /// Position of an exponent tuple of this degree. Counts the tuples that
  /// precede it: at slot i with `rest` degree left, every larger value t of
  /// e_i leads, and there are binom(rest - e_i - 1 + v - i - 1, v - i - 1)
  /// of those.
  std::size_t index_of(std::span<const Int> e) const {
    std::size_t idx = 0;
    Int rest = degree_;
    for (int i = 0; i + 1 < vars_; ++i) {
      const Int ei = e[static_cast<std::size_t>(i)];
      const int tail = vars_ - i - 1;
      idx += static_cast<std::size_t>(binom(rest - ei - 1 + tail, tail));
      rest -= ei;
    }
    return idx;
  }

 private:
  void enumerate(std::vector<Int>& e, int slot, Int rest) {
    if (slot == vars_ - 1) {
      e[static_cast<std::size_t>(slot)] = rest;
      exps_.insert(exps_.end(), e.begin(), e.end());
      return;
    }
    for (Int t = rest; t >= 0; --t) {
      e[static_cast<std::size_t>(slot)] = t;
      enumerate(e, slot + 1, rest - t);
    }
  }

  int vars_;
  Int degree_;
  std::vector<Int> exps_;
};

}  // namespace fatpoints
