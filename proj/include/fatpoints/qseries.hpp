#pragma once

// Integer combinatorics and truncated power series in q.
//
// A series is a dense list of integer coefficients, degree-ascending, with
// every degree past the end implicitly zero. Remainder vectors r and
// multiplicity vectors m describe the same fat-point problem at a fixed
// degree k through r_i = k - m_i + 1.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"

namespace fatpoints {

using Int = std::int64_t;

/// Safety cap on the number of coefficients any series constructor produces.
inline constexpr Int kDefaultSeriesCap = 1'000'000;

/// Binomial coefficient with binom(a, b) = 0 whenever a < b, including a < 0.
inline Int binom(Int a, Int b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  Int r = 1;
  for (Int i = 1; i <= b; ++i) {
    // exact at every step: r * (a - b + i) is divisible by i
    r = r * (a - b + i) / i;
  }
  return r;
}

inline constexpr Int trunc_int(Int x) noexcept { return x > 0 ? x : 0; }

class TruncSeries {
 public:
  TruncSeries() = default;
  explicit TruncSeries(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {}
  TruncSeries(std::initializer_list<Int> coeffs) : coeffs_(coeffs) {}

  /// Coefficient of q^k; zero outside the stored range.
  Int operator[](Int k) const noexcept {
    return (k >= 0 && static_cast<std::size_t>(k) < coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : 0;
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }
  const std::vector<Int>& coeffs() const noexcept { return coeffs_; }
  std::vector<Int>& coeffs() noexcept { return coeffs_; }

  /// Highest degree with a nonzero coefficient, or -1 for the zero series.
  Int degree() const noexcept {
    for (std::size_t i = coeffs_.size(); i > 0; --i) {
      if (coeffs_[i - 1] != 0) return static_cast<Int>(i - 1);
    }
    return -1;
  }

  TruncSeries& strip() {
    coeffs_.resize(static_cast<std::size_t>(degree() + 1));
    return *this;
  }

  Int sum() const noexcept { return std::accumulate(coeffs_.begin(), coeffs_.end(), Int{0}); }

  /// Coefficientwise equality; trailing zeros are insignificant.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) noexcept {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (a[static_cast<Int>(k)] != b[static_cast<Int>(k)]) return false;
    }
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
    os << '[';
    for (std::size_t k = 0; k < s.size(); ++k) os << (k ? ", " : "") << s[static_cast<Int>(k)];
    return os << ']';
  }

 private:
  std::vector<Int> coeffs_;
};

/// The tuple (r_1, ..., r_l) of a problem in P^n. Entries may be any integer;
/// zero and negative values occur transiently inside the planar algorithm.
struct RemainderVector {
  std::vector<Int> entries;
  int n = 2;

  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const RemainderVector&, const RemainderVector&) = default;
};

/// Vanishing orders (m_1, ..., m_l) in P^n.
struct MultiplicityVector {
  std::vector<Int> entries;
  int n = 2;

  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

/// r_i = k - m_i + 1.
inline RemainderVector to_remainders(const MultiplicityVector& m, Int k) {
  RemainderVector r{{}, m.n};
  r.entries.reserve(m.size());
  for (Int mi : m.entries) r.entries.push_back(k - mi + 1);
  return r;
}

/// m_i = k - r_i + 1; inverse of to_remainders at the same k.
inline MultiplicityVector to_multiplicities(const RemainderVector& r, Int k) {
  MultiplicityVector m{{}, r.n};
  m.entries.reserve(r.size());
  for (Int ri : r.entries) m.entries.push_back(k - ri + 1);
  return m;
}

inline TruncSeries trunc_series(const TruncSeries& f) {
  std::vector<Int> out(f.coeffs());
  for (Int& c : out) c = trunc_int(c);
  return TruncSeries(std::move(out));
}

namespace detail {

inline void check_length(Int k_max, Int cap) {
  if (k_max < 0) throw domain_error("k_max must be nonnegative");
  if (k_max >= cap) {
    throw capacity_error("series length " + std::to_string(k_max + 1) + " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace detail

/// Expands numerator / (1 - q)^power up to q^k_max, where the numerator is
/// given as sparse (exponent, coefficient) terms. Division by (1 - q) is a
/// running prefix sum.
inline TruncSeries expand_over_one_minus_q(std::span<const std::pair<Int, Int>> numerator, int power, Int k_max,
                                           Int cap = kDefaultSeriesCap) {
  detail::check_length(k_max, cap);
  std::vector<Int> c(static_cast<std::size_t>(k_max + 1), 0);
  for (auto [e, coef] : numerator) {
    if (e < 0) throw domain_error("negative exponent in numerator");
    if (e <= k_max) c[static_cast<std::size_t>(e)] += coef;
  }
  for (int i = 0; i < power; ++i) std::partial_sum(c.begin(), c.end(), c.begin());
  return TruncSeries(std::move(c));
}

/// binom(k + n, n): the dimension of the degree-k monomials in n + 1 variables.
inline Int leading_term(Int k, int n) { return binom(k + n, n); }

/// Virtual dimension trunc(binom(k+2,2) - sum_i binom(k - r_i + 2, 2)).
/// The summands are planar, so n != 2 is accepted only when no summand
/// applies (every r_i > k), where the value is binom(k + n, n).
inline Int virtual_dim_c(const RemainderVector& r, Int k) {
  if (k < 0) return 0;
  if (r.n != 2) {
    for (Int ri : r.entries) {
      if (ri <= k) throw domain_error("virtual_dim_c: planar summands require n = 2");
    }
    return leading_term(k, r.n);
  }
  Int total = leading_term(k, 2);
  for (Int ri : r.entries) total -= binom(k - ri + 2, 2);
  return trunc_int(total);
}

/// Default top degree for H and C: (sum of the three largest r_i) - 2. Beyond
/// it even the three-point quotient vanishes.
inline Int default_k_max(std::span<const Int> r) {
  if (r.size() < 3) throw domain_error("default k_max needs at least three points");
  std::vector<Int> s(r.begin(), r.end());
  std::partial_sort(s.begin(), s.begin() + 3, s.end(), std::greater<>());
  return std::max<Int>(s[0] + s[1] + s[2] - 2, 0);
}

/// C_r = sum_k c(r;k) q^k, coefficients 0..k_max, computed degreewise.
inline TruncSeries virtual_series_C(const RemainderVector& r, Int k_max, Int cap = kDefaultSeriesCap) {
  detail::check_length(k_max, cap);
  for (Int ri : r.entries) {
    if (ri < 1) throw domain_error("virtual_series_C requires all r_i >= 1");
  }
  std::vector<Int> c(static_cast<std::size_t>(k_max + 1));
  for (Int k = 0; k <= k_max; ++k) c[static_cast<std::size_t>(k)] = virtual_dim_c(r, k);
  return TruncSeries(std::move(c));
}

/// The same series by the closed form trunc((1 - sum_i q^{r_i}) / (1 - q)^3).
inline TruncSeries virtual_series_C_rational(const RemainderVector& r, Int k_max, Int cap = kDefaultSeriesCap) {
  if (r.n != 2) throw domain_error("virtual_series_C_rational requires n = 2");
  std::vector<std::pair<Int, Int>> num{{0, 1}};
  for (Int ri : r.entries) {
    if (ri < 1) throw domain_error("virtual_series_C_rational requires all r_i >= 1");
    num.emplace_back(ri, -1);
  }
  return trunc_series(expand_over_one_minus_q(num, 3, k_max, cap));
}

/// Expansion of prod_i (1 - q^{r_i}) / (1 - q)^(n+1): the Hilbert series of a
/// complete intersection of l <= n + 1 powers of independent linear forms.
/// Any r_i <= 0 gives the zero series.
inline TruncSeries complete_intersection_series(std::span<const Int> r, int n, Int k_max,
                                                Int cap = kDefaultSeriesCap) {
  detail::check_length(k_max, cap);
  if (std::any_of(r.begin(), r.end(), [](Int x) { return x <= 0; })) {
    return TruncSeries(std::vector<Int>(static_cast<std::size_t>(k_max + 1), 0));
  }
  // multiply out the numerator as a dense polynomial truncated at k_max
  std::vector<Int> num(static_cast<std::size_t>(k_max + 1), 0);
  num[0] = 1;
  for (Int ri : r) {
    for (Int e = k_max; e >= ri; --e) num[static_cast<std::size_t>(e)] -= num[static_cast<std::size_t>(e - ri)];
  }
  for (int i = 0; i < n + 1; ++i) std::partial_sum(num.begin(), num.end(), num.begin());
  return TruncSeries(std::move(num));
}

}  // namespace fatpoints
