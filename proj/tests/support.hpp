#pragma once

// Hand-rolled generators and independent reference computations shared by
// the unit tests. Nothing here calls into the library's own formulas.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fatpoints/qseries.hpp"

namespace fatpoints::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(eng_); }

  std::vector<Int> vec(std::size_t len, Int lo, Int hi) {
    std::vector<Int> v(len);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  std::vector<Int> sorted_vec(std::size_t len, Int lo, Int hi) {
    auto v = vec(len, lo, hi);
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Pascal's triangle, 0 outside 0 <= b <= a.
inline Int pascal(Int a, Int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  std::vector<Int> row{1};
  for (Int i = 1; i <= a; ++i) {
    std::vector<Int> next(static_cast<std::size_t>(i + 1), 1);
    for (Int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(b)];
}

/// Coefficients 0..top of num(q) * (1 - q)^{-power} by repeated prefix sums.
inline std::vector<Int> divide_by_one_minus_q(std::vector<Int> num, int power, Int top) {
  num.resize(static_cast<std::size_t>(top + 1), 0);
  for (int p = 0; p < power; ++p) {
    for (std::size_t i = 1; i < num.size(); ++i) num[i] += num[i - 1];
  }
  return num;
}

/// Polynomial product of (1 - q^{r_i}), all terms kept.
inline std::vector<Int> product_one_minus(const std::vector<Int>& r) {
  std::vector<Int> acc{1};
  for (Int ri : r) {
    std::vector<Int> next(acc.size() + static_cast<std::size_t>(ri), 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i];
      next[i + static_cast<std::size_t>(ri)] -= acc[i];
    }
    acc = std::move(next);
  }
  return acc;
}

/// #{(a,b,c) : a + b + c = k, 0 <= a < r1, 0 <= b < r2, 0 <= c < r3}.
inline Int count_triples(Int r1, Int r2, Int r3, Int k) {
  Int n = 0;
  for (Int a = 0; a < r1; ++a) {
    for (Int b = 0; b < r2; ++b) {
      const Int c = k - a - b;
      if (c >= 0 && c < r3) ++n;
    }
  }
  return n;
}

}  // namespace fatpoints::testing
