#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "fatpoints/errors.hpp"

namespace fatpoints {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod_generic(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 powmod_generic(u64 base, u64 e, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod_generic(r, base, p);
    base = mulmod_generic(base, base, p);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the fixed base set is exact for all 64-bit n.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = detail::powmod_generic(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_generic(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// GF(p) for a prime p < 2^63. Elements are plain u64 values in [0, p).
/// The default modulus 2^61 - 1 takes a shift-and-add reduction path.
class PrimeField {
 public:
  static constexpr u64 kMersenne61 = (u64{1} << 61) - 1;

  PrimeField() : PrimeField(kMersenne61) {}

  explicit PrimeField(u64 p) : p_(p), mersenne_(p == kMersenne61) {
    if (p >= (u64{1} << 63) || !is_prime_u64(p)) {
      throw domain_error("modulus " + std::to_string(p) + " is not a prime below 2^63");
    }
  }

  u64 modulus() const noexcept { return p_; }
  bool is_mersenne61() const noexcept { return mersenne_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }

  u64 mul(u64 a, u64 b) const noexcept {
    return mersenne_ ? mul_mersenne(a, b) : detail::mulmod_generic(a, b, p_);
  }

  u64 pow(u64 base, u64 e) const noexcept {
    u64 r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  /// Inverse by Fermat; a must be nonzero.
  u64 inv(u64 a) const {
    if (a == 0) throw domain_error("inverse of zero");
    return pow(a, p_ - 2);
  }

  /// Reduces a signed integer into [0, p).
  u64 from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }

  /// dst[j] -= factor * src[j] for every j. This is the elimination hot loop.
  void sub_mul_row(std::span<u64> dst, std::span<const u64> src, u64 factor) const noexcept {
    const std::size_t n = dst.size();
    if (mersenne_) {
      for (std::size_t j = 0; j < n; ++j) {
        dst[j] = sub_masked(dst[j], mul_mersenne(factor, src[j]), kMersenne61);
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        dst[j] = sub_masked(dst[j], detail::mulmod_generic(factor, src[j], p_), p_);
      }
    }
  }

  void scale_row(std::span<u64> row, u64 factor) const noexcept {
    for (u64& x : row) x = mul(x, factor);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  // Operands are random field elements, so the borrow is unpredictable; a
  // mask keeps the compiler from emitting a branch here.
  static u64 sub_masked(u64 a, u64 b, u64 p) noexcept {
    const u64 d = a - b;
    return d + (p & (u64{0} - static_cast<u64>(a < b)));
  }

  static u64 mul_mersenne(u64 a, u64 b) noexcept {
    const u128 prod = static_cast<u128>(a) * b;
    const u64 lo = static_cast<u64>(prod) & kMersenne61;
    const u64 hi = static_cast<u64>(prod >> 61);
    const u64 s = lo + hi;
    return s >= kMersenne61 ? s - kMersenne61 : s;
  }

  u64 p_;
  bool mersenne_;
};

}  // namespace fatpoints
