#pragma once

// Generic h(r;k) for at most nine points in the plane by Nagata's reduction,
// together with the transformation rule valid in any P^n and the P^1
// closed form.
//
// h(r;k) = dim S^k / (sum_i S^{k - r_i} p_i^{r_i}) at generic points p_i.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/qseries.hpp"

namespace fatpoints {

/// Largest number of points the planar algorithm accepts.
inline constexpr std::size_t kMaxAlgorithmPoints = 9;

/// Points on P^1: trunc(k + 1 - sum_i trunc(k - r_i + 1)).
inline Int h_line(std::span<const Int> r, Int k) {
  Int total = k + 1;
  for (Int ri : r) total -= trunc_int(k - ri + 1);
  return trunc_int(total);
}

/// Coefficient of q^k in prod_{i=1..3} (1 - q^{r_i}) / (1 - q), i.e. the
/// number of (a, b, c) with a + b + c = k and 0 <= a < r_1, 0 <= b < r_2,
/// 0 <= c < r_3. Zero when some r_i <= 0 or k < 0.
inline Int h_three_points(Int r1, Int r2, Int r3, Int k) {
  if (k < 0 || r1 <= 0 || r2 <= 0 || r3 <= 0) return 0;
  // inclusion-exclusion over the upper bounds
  Int total = 0;
  const Int rs[3] = {r1, r2, r3};
  for (int mask = 0; mask < 8; ++mask) {
    Int shift = 0;
    int bits = 0;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) {
        shift += rs[i];
        ++bits;
      }
    }
    const Int term = binom(k - shift + 2, 2);
    total += (bits % 2 == 0) ? term : -term;
  }
  return total;
}

/// Planar l <= 2: coefficient of q^k in prod_i (1 - q^{r_i}) / (1 - q)^3.
inline Int h_complete_intersection(std::span<const Int> r, Int k) {
  if (r.size() > 2) throw domain_error("complete intersection form applies to at most two planar points");
  if (k < 0) return 0;
  if (std::any_of(r.begin(), r.end(), [](Int x) { return x <= 0; })) return 0;
  Int total = binom(k + 2, 2);
  if (r.size() >= 1) total -= binom(k - r[0] + 2, 2);
  if (r.size() == 2) total += binom(k - r[0] - r[1] + 2, 2) - binom(k - r[1] + 2, 2);
  return total;
}

struct TransformResult {
  RemainderVector r;
  Int k = 0;

  friend bool operator==(const TransformResult&, const TransformResult&) = default;
};

/// The transformation rule h(r;k) = h(r';k') in P^n. The first n + 1 entries
/// are held fixed; with s = r_1 + ... + r_{n+1} - n - 1,
///   k'   = s - k
///   r_i' = s + r_i - 2k   (i > n + 1).
/// k' may be negative, meaning h = 0. The rule is an involution.
inline TransformResult transform(const RemainderVector& r, Int k) {
  const std::size_t fixed = static_cast<std::size_t>(r.n) + 1;
  if (r.size() <= fixed) {
    throw domain_error("transform needs more than n + 1 = " + std::to_string(fixed) + " points");
  }
  Int s = -static_cast<Int>(fixed);
  for (std::size_t i = 0; i < fixed; ++i) s += r.entries[i];
  TransformResult out{r, s - k};
  for (std::size_t i = fixed; i < r.size(); ++i) out.r.entries[i] = s + r.entries[i] - 2 * k;
  return out;
}

enum class HMethod { algorithm, closed_form_p1, closed_form_3pts, complete_intersection, oracle };

inline const char* to_string(HMethod m) {
  switch (m) {
    case HMethod::algorithm: return "algorithm";
    case HMethod::closed_form_p1: return "closed_form_p1";
    case HMethod::closed_form_3pts: return "closed_form_3pts";
    case HMethod::complete_intersection: return "complete_intersection";
    case HMethod::oracle: return "oracle";
  }
  return "?";
}

/// One fired step of the algorithm. States are stored sorted ascending, so the
/// output of a record is exactly the input of the next one. Terminal steps
/// carry `value`; step 6 carries the `offset` it adds to the final answer.
struct TraceRecord {
  int step = 0;
  std::vector<Int> r_in;
  Int k_in = 0;
  std::vector<Int> r_out;
  Int k_out = 0;
  std::optional<Int> value;
  Int offset = 0;
};

struct AlgorithmTrace {
  std::vector<TraceRecord> steps;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }
};

struct HValue {
  Int value = 0;
  AlgorithmTrace trace;
  HMethod method = HMethod::algorithm;
};

namespace detail {

inline std::vector<Int> sorted_copy(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline Int iteration_cap(std::span<const Int> r, Int k) {
  Int s = (k < 0 ? -k : k) + static_cast<Int>(r.size());
  for (Int x : r) s += x < 0 ? -x : x;
  return 10 * s + 10;
}

}  // namespace detail

/// Nagata's algorithm for generic points in P^2. Steps, in order, restarting
/// at 1 after every rewrite:
///   1. l = 3: three-point closed form.
///   2. sort ascending; h = 0 if r_1 <= 0 (or k < 0).
///   3. r_1 = 1: P^1 closed form on the remaining entries.
///   4. r_l > k: drop r_l.
///   5. 2k + 3 > r_1 + r_2 + r_3: apply the transformation rule.
///   6. h(r;k) = h(r - 2; k - 3) + 3k - sum_i (k - r_i + 1).
/// l = 1, 2 use the complete intersection form. More than nine entries are
/// accepted only if entries r_i > k (which do not affect degree k) bring the
/// count down to nine.
inline HValue h_nagata(const RemainderVector& input, Int k) {
  if (input.n != 2) throw domain_error("h_nagata is planar (n = 2)");
  HValue result;
  auto& trace = result.trace.steps;
  std::vector<Int> r = input.entries;

  if (r.size() > kMaxAlgorithmPoints) {
    std::sort(r.begin(), r.end());
    while (r.size() > kMaxAlgorithmPoints && r.back() > k) {
      std::vector<Int> before = r;
      r.pop_back();
      trace.push_back({4, std::move(before), k, r, k, std::nullopt, 0});
    }
    if (r.size() > kMaxAlgorithmPoints) {
      throw domain_error("h_nagata supports at most 9 relevant points, got " + std::to_string(r.size()));
    }
  }
  if (r.empty()) {
    result.value = k < 0 ? 0 : binom(k + 2, 2);
    result.method = HMethod::complete_intersection;
    return result;
  }
  if (r.size() <= 2) {
    result.value = h_complete_intersection(r, k);
    result.method = HMethod::complete_intersection;
    trace.push_back({0, detail::sorted_copy(r), k, {}, k, result.value, 0});
    return result;
  }

  const Int cap = detail::iteration_cap(r, k);
  Int accumulated = 0;
  bool rewritten = !trace.empty();
  auto finish = [&](int step, Int terminal, HMethod closed_form) {
    trace.push_back({step, detail::sorted_copy(r), k, {}, k, terminal, 0});
    result.value = accumulated + terminal;
    result.method = rewritten ? HMethod::algorithm : closed_form;
    if (result.value < 0) throw internal_error("h_nagata produced a negative value");
    return result;
  };

  for (Int iter = 0;; ++iter) {
    if (iter > cap) throw internal_error("h_nagata exceeded its iteration cap");

    // 1
    if (r.size() == 3) return finish(1, h_three_points(r[0], r[1], r[2], k), HMethod::closed_form_3pts);

    // 2
    std::sort(r.begin(), r.end());
    if (r.front() <= 0 || k < 0) return finish(2, 0, HMethod::algorithm);

    // 3
    if (r.front() == 1) {
      return finish(3, h_line(std::span<const Int>(r).subspan(1), k), HMethod::closed_form_p1);
    }

    // 4
    if (r.back() > k) {
      std::vector<Int> before = r;
      r.pop_back();
      trace.push_back({4, std::move(before), k, r, k, std::nullopt, 0});
      rewritten = true;
      continue;
    }

    // 5
    const Int s3 = r[0] + r[1] + r[2];
    if (2 * k + 3 > s3) {
      std::vector<Int> before = r;
      const Int k_before = k;
      for (std::size_t i = 3; i < r.size(); ++i) r[i] = s3 - 3 + r[i] - 2 * k;
      k = s3 - 3 - k;
      trace.push_back({5, std::move(before), k_before, detail::sorted_copy(r), k, std::nullopt, 0});
      rewritten = true;
      continue;
    }

    // 6
    Int offset = 3 * k;
    for (Int ri : r) offset -= k - ri + 1;
    std::vector<Int> before = r;
    const Int k_before = k;
    for (Int& ri : r) ri -= 2;
    k -= 3;
    accumulated += offset;
    trace.push_back({6, std::move(before), k_before, r, k, std::nullopt, offset});
    rewritten = true;
  }
}

/// Entry-level convenience: the value only.
inline Int h_value(const RemainderVector& r, Int k) { return h_nagata(r, k).value; }

/// H_r = sum_k h(r;k) q^k for 3..9 planar points, degrees 0..k_max (default:
/// sum of the three largest r_i minus 2; every higher coefficient is zero).
inline TruncSeries hilbert_series_H(const RemainderVector& r, std::optional<Int> k_max = std::nullopt,
                                    Int cap = kDefaultSeriesCap) {
  if (r.n != 2) throw domain_error("hilbert_series_H is planar (n = 2)");
  if (r.size() > kMaxAlgorithmPoints) throw domain_error("hilbert_series_H supports at most 9 points");
  for (Int ri : r.entries) {
    if (ri < 1) throw domain_error("hilbert_series_H requires all r_i >= 1");
  }
  Int top = 0;
  if (k_max) {
    top = *k_max;
  } else {
    if (r.size() < 3) throw domain_error("H_r has infinite support for fewer than three points; pass k_max");
    top = default_k_max(r.entries);
  }
  detail::check_length(top, cap);
  std::vector<Int> c(static_cast<std::size_t>(top + 1));
  for (Int k = 0; k <= top; ++k) c[static_cast<std::size_t>(k)] = h_nagata(r, k).value;
  return TruncSeries(std::move(c));
}

/// d(m;k): the dimension of degree-k forms vanishing to order m_i at generic
/// points. Points with m_i = 0 impose nothing and are dropped.
inline HValue d_multiplicity(const MultiplicityVector& m, Int k) {
  if (m.n != 2) throw domain_error("d_multiplicity is planar (n = 2)");
  MultiplicityVector kept{{}, 2};
  for (Int mi : m.entries) {
    if (mi < 0) throw domain_error("multiplicities must be nonnegative");
    if (mi > 0) kept.entries.push_back(mi);
  }
  return h_nagata(to_remainders(kept, k), k);
}

}  // namespace fatpoints
