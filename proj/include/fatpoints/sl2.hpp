#pragma once

// Characters of finite-dimensional sl2 modules and tensor product
// decompositions.
//
// L^p is the irreducible module of dimension p, with weights p-1, p-3, ...,
// -(p-1); L^0 is the zero module. Decompositions are computed by convolving
// characters and peeling irreducibles off the top weight.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/nagata.hpp"
#include "fatpoints/qseries.hpp"

namespace fatpoints {

/// Weight multiplicities of an sl2 module. Stored by top weight T and the
/// multiplicities of T, T-2, ..., -T, which builds in the symmetry and the
/// common parity of all weights.
class SL2Character {
 public:
  SL2Character() = default;

  /// `mults[i]` is the multiplicity of weight top - 2i; must have top + 1
  /// entries and be symmetric.
  SL2Character(Int top, std::vector<Int> mults) : top_(top), mults_(std::move(mults)) {
    if (top < 0 || mults_.size() != static_cast<std::size_t>(top + 1)) {
      throw domain_error("character storage does not match its top weight");
    }
    for (std::size_t i = 0; i < mults_.size(); ++i) {
      if (mults_[i] < 0 || mults_[i] != mults_[mults_.size() - 1 - i]) {
        throw domain_error("character multiplicities must be nonnegative and symmetric");
      }
    }
    normalize();
  }

  bool is_zero() const noexcept { return mults_.empty(); }

  /// Highest weight; meaningless for the zero character.
  Int top_weight() const noexcept { return top_; }

  Int multiplicity(Int weight) const noexcept {
    if (is_zero()) return 0;
    const Int off = top_ - weight;
    if (off < 0 || off > 2 * top_ || off % 2 != 0) return 0;
    return mults_[static_cast<std::size_t>(off / 2)];
  }

  Int dimension() const noexcept {
    Int d = 0;
    for (Int m : mults_) d += m;
    return d;
  }

  /// weight -> multiplicity over the nonzero support.
  std::map<Int, Int> weights() const {
    std::map<Int, Int> out;
    for (std::size_t i = 0; i < mults_.size(); ++i) {
      if (mults_[i] != 0) out[top_ - 2 * static_cast<Int>(i)] = mults_[i];
    }
    return out;
  }

  const std::vector<Int>& raw() const noexcept { return mults_; }

  friend bool operator==(const SL2Character& a, const SL2Character& b) noexcept {
    return a.top_ == b.top_ && a.mults_ == b.mults_;
  }

 private:
  void normalize() {
    // drop zero multiplicities at both ends so equal modules compare equal
    std::size_t lead = 0;
    while (lead < mults_.size() && mults_[lead] == 0) ++lead;
    if (lead == mults_.size()) {
      top_ = 0;
      mults_.clear();
      return;
    }
    if (lead > 0) {
      mults_.erase(mults_.end() - static_cast<std::ptrdiff_t>(lead), mults_.end());
      mults_.erase(mults_.begin(), mults_.begin() + static_cast<std::ptrdiff_t>(lead));
      top_ -= 2 * static_cast<Int>(lead);
    }
  }

  Int top_ = 0;
  std::vector<Int> mults_;
};

/// Multiplicity of each irreducible L^p (p >= 1) in a module.
struct DecompositionTable {
  std::map<Int, Int> irrep_mults;

  Int operator[](Int p) const {
    auto it = irrep_mults.find(p);
    return it == irrep_mults.end() ? 0 : it->second;
  }

  Int dimension() const {
    Int d = 0;
    for (auto [p, m] : irrep_mults) d += p * m;
    return d;
  }

  friend bool operator==(const DecompositionTable&, const DecompositionTable&) = default;
};

inline SL2Character char_irrep(Int p) {
  if (p < 0) throw domain_error("irreducible dimension must be nonnegative");
  if (p == 0) return {};
  return SL2Character(p - 1, std::vector<Int>(static_cast<std::size_t>(p), 1));
}

/// Character of a tensor product: additive convolution of weights.
inline SL2Character char_tensor(const SL2Character& a, const SL2Character& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.raw();
  const auto& y = b.raw();
  std::vector<Int> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return SL2Character(a.top_weight() + b.top_weight(), std::move(out));
}

inline SL2Character char_from_table(const DecompositionTable& t) {
  SL2Character acc;
  for (auto [p, mult] : t.irrep_mults) {
    if (mult == 0) continue;
    std::vector<Int> m(static_cast<std::size_t>(p), mult);
    SL2Character piece(p - 1, std::move(m));
    if (acc.is_zero()) {
      acc = piece;
      continue;
    }
    // add two characters with possibly different tops (same parity assumed)
    const Int top = std::max(acc.top_weight(), piece.top_weight());
    if ((acc.top_weight() - piece.top_weight()) % 2 != 0) {
      throw domain_error("cannot add characters of different weight parity");
    }
    std::vector<Int> sum(static_cast<std::size_t>(top + 1), 0);
    for (Int w = -top; w <= top; w += 2) {
      sum[static_cast<std::size_t>((top - w) / 2)] = acc.multiplicity(w) + piece.multiplicity(w);
    }
    acc = SL2Character(top, std::move(sum));
  }
  return acc;
}

/// Peels irreducibles from the top: mult(L^p) = dim[p - 1] - dim[p + 1].
inline DecompositionTable decompose_character(const SL2Character& ch) {
  DecompositionTable t;
  if (ch.is_zero()) return t;
  for (Int w = ch.top_weight(); w >= 0; w -= 2) {
    const Int m = ch.multiplicity(w) - ch.multiplicity(w + 2);
    if (m < 0) throw internal_error("character is not a valid sl2 character");
    if (m > 0) t.irrep_mults[w + 1] = m;
  }
  return t;
}

/// L^{r_1} (x) ... (x) L^{r_m}.
inline SL2Character tensor_character(std::span<const Int> factors) {
  if (factors.empty()) throw domain_error("need at least one tensor factor");
  SL2Character acc = char_irrep(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) acc = char_tensor(acc, char_irrep(factors[i]));
  return acc;
}

inline DecompositionTable decompose(std::span<const Int> factors) {
  for (Int r : factors) {
    if (r < 1) throw domain_error("tensor factors must be positive dimensions");
  }
  return decompose_character(tensor_character(factors));
}

/// L^r (x) L^r (x) L^r as
///   sum_{j=0}^{r-1} (j+1) L^{3(r-1)-2j+1}  +  sum_{j=1}^{floor((r-1)/2)} (r-2j) L^{r-2j}.
inline DecompositionTable triple_lemma_table(Int r) {
  if (r < 1) throw domain_error("triple_lemma_table requires r >= 1");
  DecompositionTable t;
  for (Int j = 0; j <= r - 1; ++j) t.irrep_mults[3 * (r - 1) - 2 * j + 1] += j + 1;
  for (Int j = 1; j <= (r - 1) / 2; ++j) t.irrep_mults[r - 2 * j] += r - 2 * j;
  return t;
}

/// dim Hom(L^{l+1}, L^{r1} (x) L^{r2} (x) L^{r3}). With
/// k = (r1 + r2 + r3 - 3 - l) / 2 this is trunc(k + 1 - sum_{k >= r_i} (k - r_i + 1))
/// when k is a nonnegative integer, and zero otherwise.
inline Int hom_mult_triple(Int r1, Int r2, Int r3, Int l) {
  if (r1 < 1 || r2 < 1 || r3 < 1 || l < 0) throw domain_error("hom_mult_triple requires r_i >= 1 and l >= 0");
  const Int twice_k = r1 + r2 + r3 - 3 - l;
  if (twice_k < 0 || twice_k % 2 != 0) return 0;
  const Int k = twice_k / 2;
  const Int r[3] = {r1, r2, r3};
  return h_line(r, k);
}

/// dim (L^p / e^r L^p)[lambda]: 1 when lambda is a weight of L^p lying below
/// -p + 1 + 2r (the lowest weight of e^r L^p), else 0.
inline Int quotient_weight_dim(Int p, Int r, Int lambda) {
  if (p <= 0) return 0;
  const bool is_weight = (lambda <= p - 1) && (lambda >= -(p - 1)) && ((p - 1 - lambda) % 2 == 0);
  if (!is_weight) return 0;
  return lambda < -p + 1 + 2 * r ? 1 : 0;
}

/// H_r for l = n + 2 points in P^n through M = L^{r_1} (x) ... (x) L^{r_{n+1}}:
/// h(r;k) = dim (M / e^{r_{n+2}} M)[lambda(k)] with
/// lambda(k) = 2k - (r_1 + ... + r_{n+1}) + n + 1. Coefficients run over
/// k = 0 .. sum_i (r_i - 1), the weights of M.
inline TruncSeries bridge_series(std::span<const Int> r) {
  if (r.size() < 2) throw domain_error("bridge_series needs n + 2 >= 2 entries");
  for (Int ri : r) {
    if (ri < 1) throw domain_error("bridge_series requires all r_i >= 1");
  }
  const auto factors = r.first(r.size() - 1);
  const Int extra = r.back();
  const Int fixed = static_cast<Int>(factors.size());
  Int sum = 0;
  for (Int ri : factors) sum += ri;
  const DecompositionTable table = decompose(factors);
  const Int top_k = sum - fixed;
  std::vector<Int> c(static_cast<std::size_t>(top_k + 1), 0);
  for (Int k = 0; k <= top_k; ++k) {
    const Int lambda = 2 * k - sum + fixed;
    Int v = 0;
    for (auto [p, mult] : table.irrep_mults) v += mult * quotient_weight_dim(p, extra, lambda);
    c[static_cast<std::size_t>(k)] = v;
  }
  return TruncSeries(std::move(c));
}

/// h for four generic points in P^2 by the case analysis on
/// lambda(k) = 2k + 3 - (r1 + r2 + r3), with r sorted ascending:
///  - lambda <= 0 and r4 <= k: the virtual dimension c(r;k);
///  - r4 <= lambda: zero;
///  - r4 > k: the three-point value h(r1,r2,r3;k);
///  - otherwise the three-point value minus dim (e^{r4} M)[lambda], which is
///    the sum over p = lambda + 1 + 2j, j >= r4 - lambda, of the multiplicity
///    of L^p in M = L^{r1} (x) L^{r2} (x) L^{r3}. That multiplicity is the
///    P^1 value h_1(r1,r2,r3; s - 3 - k - j) with s = r1 + r2 + r3.
inline Int fourfold_h(std::span<const Int> input, Int k) {
  if (input.size() != 4) throw domain_error("fourfold_h takes exactly four entries");
  std::vector<Int> r(input.begin(), input.end());
  std::sort(r.begin(), r.end());
  if (r[0] < 1) throw domain_error("fourfold_h requires positive entries");
  if (k < 0) return 0;
  const Int s = r[0] + r[1] + r[2];
  const Int lambda = 2 * k + 3 - s;
  if (lambda <= 0 && r[3] <= k) return virtual_dim_c(RemainderVector{r, 2}, k);
  if (r[3] <= lambda) return 0;
  const Int three = h_three_points(r[0], r[1], r[2], k);
  if (r[3] > k) return three;
  const Int first3[3] = {r[0], r[1], r[2]};
  Int removed = 0;
  for (Int j = r[3] - lambda;; ++j) {
    const Int degree = s - 3 - k - j;
    if (degree < 0) break;
    removed += h_line(first3, degree);
  }
  return three - removed;
}

}  // namespace fatpoints
