#pragma once

// Brute-force h(r;k) and d(m;k) by exact rank over a large prime field.
//
// Two independent matrix constructions:
//   dual span:   rows span sum_i S^{k - r_i} p_i^{r_i} inside S^k, so
//                h = cols - rank.
//   derivatives: rows are the functionals f -> (d^alpha f)(p_i) for
//                |alpha| = m_i - 1, so d = cols - rank.
// With r_i = k - m_i + 1 the two dimensions coincide. Genericity is
// approximated by random points; the reported value is the minimum over
// seeds, with a consensus flag.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/field.hpp"
#include "fatpoints/monomials.hpp"
#include "fatpoints/qseries.hpp"

namespace fatpoints {

enum class PointKind { generic, collinear, conic, cubic, standard_plus_generic };

inline const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::generic: return "generic";
    case PointKind::collinear: return "collinear";
    case PointKind::conic: return "conic";
    case PointKind::cubic: return "cubic";
    case PointKind::standard_plus_generic: return "standard_plus_generic";
  }
  return "?";
}

inline PointKind point_kind_from_string(std::string_view s) {
  if (s == "generic") return PointKind::generic;
  if (s == "collinear") return PointKind::collinear;
  if (s == "conic") return PointKind::conic;
  if (s == "cubic") return PointKind::cubic;
  if (s == "standard_plus_generic" || s == "standard") return PointKind::standard_plus_generic;
  throw domain_error("unknown point kind '" + std::string(s) + "'");
}

struct PointConfiguration {
  int n = 2;
  std::vector<std::vector<u64>> points;  // each of length n + 1
  PointKind kind = PointKind::generic;
  u64 seed = 0;
  u64 prime = PrimeField::kMersenne61;

  std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

/// Uniform draw from [1, p) by rejection on the raw 64-bit stream, so the
/// sequence depends only on the engine, not on the library's distributions.
inline u64 draw_nonzero(std::mt19937_64& gen, u64 p) {
  const u64 span = p - 1;
  const u64 limit = (~u64{0} / span) * span;
  for (;;) {
    const u64 x = gen();
    if (x < limit) return 1 + x % span;
  }
}

inline std::mt19937_64 make_engine(PointKind kind, int n, std::size_t l, u64 seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(l)};
  return std::mt19937_64(seq);
}

inline bool proportional(const std::vector<u64>& a, const std::vector<u64>& b, const PrimeField& f) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (f.mul(a[i], b[j]) != f.mul(a[j], b[i])) return false;
    }
  }
  return true;
}

}  // namespace detail

inline constexpr int kMaxResamples = 1000;

/// Deterministic in (kind, n, l, seed, p). Structured kinds:
///   collinear: last coordinate 0, pairwise non-proportional;
///   conic:     (1, t, t^2) with distinct t (n = 2);
///   cubic:     (1, t, t^3) with distinct t and sum t != 0 (n = 2);
///   standard_plus_generic: the coordinate points first, then random points.
inline PointConfiguration sample_configuration(PointKind kind, int n, std::size_t l, u64 seed,
                                               const PrimeField& field) {
  if (l < 1) throw domain_error("need at least one point");
  if (n < 1) throw domain_error("projective dimension must be positive");
  if ((kind == PointKind::conic || kind == PointKind::cubic) && n != 2) {
    throw domain_error(std::string(to_string(kind)) + " configurations live in P^2");
  }
  const u64 p = field.modulus();
  auto gen = detail::make_engine(kind, n, l, seed);
  PointConfiguration cfg{n, {}, kind, seed, p};
  const std::size_t width = static_cast<std::size_t>(n) + 1;

  auto random_point = [&] {
    std::vector<u64> pt(width);
    for (u64& x : pt) x = detail::draw_nonzero(gen, p);
    return pt;
  };

  auto distinct_params = [&] {
    std::vector<u64> ts;
    while (ts.size() < l) {
      const u64 t = detail::draw_nonzero(gen, p);
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    return ts;
  };

  switch (kind) {
    case PointKind::generic:
      for (std::size_t i = 0; i < l; ++i) cfg.points.push_back(random_point());
      break;
    case PointKind::standard_plus_generic:
      for (std::size_t i = 0; i < l; ++i) {
        if (i < width) {
          std::vector<u64> e(width, 0);
          e[i] = 1;
          cfg.points.push_back(std::move(e));
        } else {
          cfg.points.push_back(random_point());
        }
      }
      break;
    case PointKind::collinear: {
      if (n == 1 && l > 1) throw domain_error("collinear kind in P^1 admits a single point");
      int tries = 0;
      while (cfg.points.size() < l) {
        std::vector<u64> pt = random_point();
        pt.back() = 0;
        const bool clash = std::any_of(cfg.points.begin(), cfg.points.end(),
                                       [&](const auto& q) { return detail::proportional(pt, q, field); });
        if (clash) {
          if (++tries > kMaxResamples) throw domain_error("could not sample distinct collinear points");
          continue;
        }
        cfg.points.push_back(std::move(pt));
      }
      break;
    }
    case PointKind::conic:
      for (u64 t : distinct_params()) cfg.points.push_back({1, t, field.mul(t, t)});
      break;
    case PointKind::cubic: {
      for (int attempt = 0;; ++attempt) {
        if (attempt > kMaxResamples) throw domain_error("could not sample cubic points with nonzero parameter sum");
        const auto ts = distinct_params();
        u64 sum = 0;
        for (u64 t : ts) sum = field.add(sum, t);
        if (sum == 0) continue;
        for (u64 t : ts) cfg.points.push_back({1, t, field.mul(t, field.mul(t, t))});
        break;
      }
      break;
    }
  }
  return cfg;
}

/// Dense row-major matrix over GF(p).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::span<u64> row(std::size_t i) { return std::span<u64>(data).subspan(i * cols, cols); }
  std::span<const u64> row(std::size_t i) const { return std::span<const u64>(data).subspan(i * cols, cols); }
  u64& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  u64 at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  void append_row(std::span<const u64> r) {
    if (r.size() != cols) throw domain_error("row width mismatch");
    data.insert(data.end(), r.begin(), r.end());
    ++rows;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Rank by in-place Gaussian elimination; the pivot in each column is the
/// first remaining row with a nonzero entry there.
inline std::size_t rank_mod_p(Matrix m, const PrimeField& field) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t piv = rank;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(rank).begin());
    }
    auto prow = m.row(rank).subspan(c);
    field.scale_row(prow, field.inv(prow[0]));
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      const u64 f = m.at(i, c);
      if (f != 0) field.sub_mul_row(m.row(i).subspan(c), prow, f);
    }
    ++rank;
  }
  return rank;
}

/// Row echelon basis grown one row at a time. Each stored row is normalized
/// to 1 at its pivot and kept only from the pivot onward. Lets the oracle
/// stop as soon as the rank reaches the column count.
class EchelonBasis {
 public:
  EchelonBasis(const PrimeField& field, std::size_t cols) : field_(field), cols_(cols), pivots_(cols) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t cols() const noexcept { return cols_; }
  bool full() const noexcept { return rank_ == cols_; }

  /// Reduces `row` (destroyed) against the basis; returns true if it was
  /// independent and has been added.
  bool add(std::span<u64> row) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const u64 lead = row[c];
      if (lead == 0) continue;
      auto& piv = pivots_[c];
      if (!piv.empty()) {
        field_.sub_mul_row(row.subspan(c), piv, lead);
        continue;
      }
      auto tail = row.subspan(c);
      field_.scale_row(tail, field_.inv(lead));
      piv.assign(tail.begin(), tail.end());
      ++rank_;
      return true;
    }
    return false;
  }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::size_t rank_ = 0;
  std::vector<std::vector<u64>> pivots_;
};

namespace detail {

/// Coefficients of (sum_j p_j x_j)^d in the degree-d basis, by multiplying
/// by the linear form d times (Pascal's rule mod p).
inline std::vector<u64> power_of_linear_form(std::span<const u64> point, Int d, const PrimeField& field) {
  const int vars = static_cast<int>(point.size());
  std::vector<u64> cur{1};
  for (Int deg = 0; deg < d; ++deg) {
    MonomialBasis from(vars, deg);
    MonomialBasis to(vars, deg + 1);
    std::vector<u64> next(to.size(), 0);
    std::vector<Int> e(static_cast<std::size_t>(vars));
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (cur[i] == 0) continue;
      auto a = from[i];
      for (int v = 0; v < vars; ++v) {
        std::copy(a.begin(), a.end(), e.begin());
        ++e[static_cast<std::size_t>(v)];
        auto& slot = next[to.index_of(e)];
        slot = field.add(slot, field.mul(cur[i], point[static_cast<std::size_t>(v)]));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline void check_problem(const PointConfiguration& cfg, std::size_t entries, Int k) {
  if (cfg.size() != entries) {
    throw domain_error("configuration has " + std::to_string(cfg.size()) + " points but the problem has " +
                       std::to_string(entries));
  }
  if (k >= 0 && cfg.prime <= static_cast<u64>(k)) {
    throw domain_error("prime " + std::to_string(cfg.prime) + " must exceed the degree " + std::to_string(k));
  }
}

}  // namespace detail

/// Number of rows the dual span construction produces.
inline std::size_t dual_span_row_count(const RemainderVector& r, Int k) {
  std::size_t rows = 0;
  for (Int ri : r.entries) {
    const Int e = std::max<Int>(ri, 0);
    if (e <= k) rows += static_cast<std::size_t>(binom(k - e + r.n, r.n));
  }
  return rows;
}

/// Streams the rows of the dual span matrix: for each point i with r_i <= k
/// and each monomial beta of degree k - r_i, the coefficients of
/// x^beta * p_i^{r_i}. Entries r_i <= 0 are read as 0 (the whole of S^k).
/// The callback receives a mutable row it may consume; returning false stops.
template <class Sink>
void for_each_dual_span_row(const PointConfiguration& cfg, const RemainderVector& r, Int k, const PrimeField& field,
                            Sink&& sink) {
  detail::check_problem(cfg, r.size(), k);
  if (cfg.n != r.n) throw domain_error("configuration and problem disagree on n");
  if (k < 0) return;
  const int vars = r.n + 1;
  const MonomialBasis cols(vars, k);
  std::vector<u64> row(cols.size());
  std::vector<Int> e(static_cast<std::size_t>(vars));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Int ri = std::max<Int>(r.entries[i], 0);
    if (ri > k) continue;
    const MonomialBasis alphas(vars, ri);
    const MonomialBasis betas(vars, k - ri);
    const auto power = detail::power_of_linear_form(cfg.points[i], ri, field);
    for (std::size_t b = 0; b < betas.size(); ++b) {
      std::fill(row.begin(), row.end(), 0);
      auto beta = betas[b];
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        auto alpha = alphas[a];
        for (int v = 0; v < vars; ++v) e[static_cast<std::size_t>(v)] = alpha[static_cast<std::size_t>(v)] + beta[static_cast<std::size_t>(v)];
        row[cols.index_of(e)] = power[a];
      }
      if (!sink(std::span<u64>(row))) return;
    }
  }
}

inline Matrix dual_span_matrix(const PointConfiguration& cfg, const RemainderVector& r, Int k,
                               const PrimeField& field) {
  Matrix m(0, k < 0 ? 0 : static_cast<std::size_t>(binom(k + r.n, r.n)));
  for_each_dual_span_row(cfg, r, k, field, [&](std::span<u64> row) {
    m.append_row(row);
    return true;
  });
  return m;
}

inline std::size_t derivative_row_count(const MultiplicityVector& m, Int k) {
  std::size_t rows = 0;
  for (Int mi : m.entries) {
    const Int order = std::min(mi, k + 1);
    if (order >= 1) rows += static_cast<std::size_t>(binom(order - 1 + m.n, m.n));
  }
  return rows;
}

/// Streams the derivative-condition rows: for each point i and each alpha
/// with |alpha| = min(m_i, k + 1) - 1, the values (d^alpha x^gamma)(p_i) over
/// the degree-k monomials gamma. Orders above k are capped since vanishing to
/// order k + 1 already forces f = 0. Needs p > k so the falling factorials
/// stay invertible.
template <class Sink>
void for_each_derivative_row(const PointConfiguration& cfg, const MultiplicityVector& m, Int k,
                             const PrimeField& field, Sink&& sink) {
  detail::check_problem(cfg, m.size(), k);
  if (cfg.n != m.n) throw domain_error("configuration and problem disagree on n");
  if (k < 0) return;
  const int vars = m.n + 1;
  const MonomialBasis cols(vars, k);
  std::vector<u64> row(cols.size());

  // falling[j][a] = j (j-1) ... (j-a+1) mod p for 0 <= a <= j <= k
  std::vector<std::vector<u64>> falling(static_cast<std::size_t>(k + 1));
  for (Int j = 0; j <= k; ++j) {
    auto& fj = falling[static_cast<std::size_t>(j)];
    fj.resize(static_cast<std::size_t>(j + 1));
    fj[0] = 1;
    for (Int a = 1; a <= j; ++a) fj[static_cast<std::size_t>(a)] = field.mul(fj[static_cast<std::size_t>(a - 1)], static_cast<u64>(j - a + 1));
  }

  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.entries[i] < 0) throw domain_error("multiplicities must be nonnegative");
    const Int order = std::min(m.entries[i], k + 1);
    if (order < 1) continue;
    const auto& pt = cfg.points[i];
    // pw[v][e] = pt[v]^e
    std::vector<std::vector<u64>> pw(static_cast<std::size_t>(vars), std::vector<u64>(static_cast<std::size_t>(k + 1)));
    for (int v = 0; v < vars; ++v) {
      auto& pv = pw[static_cast<std::size_t>(v)];
      pv[0] = 1;
      for (Int e = 1; e <= k; ++e) pv[static_cast<std::size_t>(e)] = field.mul(pv[static_cast<std::size_t>(e - 1)], pt[static_cast<std::size_t>(v)]);
    }
    const MonomialBasis alphas(vars, order - 1);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      auto alpha = alphas[a];
      for (std::size_t c = 0; c < cols.size(); ++c) {
        auto gamma = cols[c];
        u64 val = 1;
        for (int v = 0; v < vars; ++v) {
          const Int g = gamma[static_cast<std::size_t>(v)];
          const Int al = alpha[static_cast<std::size_t>(v)];
          if (g < al) {
            val = 0;
            break;
          }
          val = field.mul(val, field.mul(falling[static_cast<std::size_t>(g)][static_cast<std::size_t>(al)],
                                         pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(g - al)]));
        }
        row[c] = val;
      }
      if (!sink(std::span<u64>(row))) return;
    }
  }
}

inline Matrix derivative_matrix(const PointConfiguration& cfg, const MultiplicityVector& m, Int k,
                                const PrimeField& field) {
  Matrix out(0, k < 0 ? 0 : static_cast<std::size_t>(binom(k + m.n, m.n)));
  for_each_derivative_row(cfg, m, k, field, [&](std::span<u64> row) {
    out.append_row(row);
    return true;
  });
  return out;
}

enum class OracleMethod { dual_span, derivative_conditions, both };

inline const char* to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::dual_span: return "dual_span";
    case OracleMethod::derivative_conditions: return "derivative_conditions";
    case OracleMethod::both: return "both";
  }
  return "?";
}

inline OracleMethod oracle_method_from_string(std::string_view s) {
  if (s == "dual" || s == "dual_span") return OracleMethod::dual_span;
  if (s == "deriv" || s == "derivative_conditions") return OracleMethod::derivative_conditions;
  if (s == "both") return OracleMethod::both;
  throw domain_error("unknown oracle method '" + std::string(s) + "'");
}

struct OracleOptions {
  PointKind kind = PointKind::generic;
  std::vector<u64> seeds{1, 2, 3};
  u64 prime = PrimeField::kMersenne61;
  OracleMethod method = OracleMethod::dual_span;
};

struct SeedOutcome {
  u64 seed = 0;
  Int h = 0;               // from the primary construction
  std::size_t rank = 0;
  std::optional<Int> d;    // derivative-condition dimension, method = both
};

struct RankResult {
  Int value_h = 0;
  Int value_d = 0;
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  OracleMethod method = OracleMethod::dual_span;
  std::vector<u64> seeds_used;
  bool consensus = true;
  bool duality_agrees = true;  // only meaningful for method = both
  std::vector<SeedOutcome> per_seed;
  int n = 2;
  u64 prime = PrimeField::kMersenne61;
  PointKind kind = PointKind::generic;
};

/// cols - rank of the dual span matrix for one configuration.
inline std::size_t dual_span_rank(const PointConfiguration& cfg, const RemainderVector& r, Int k,
                                  const PrimeField& field) {
  if (k < 0) return 0;
  EchelonBasis basis(field, static_cast<std::size_t>(binom(k + r.n, r.n)));
  for_each_dual_span_row(cfg, r, k, field, [&](std::span<u64> row) {
    basis.add(row);
    return !basis.full();
  });
  return basis.rank();
}

inline std::size_t derivative_rank(const PointConfiguration& cfg, const MultiplicityVector& m, Int k,
                                   const PrimeField& field) {
  if (k < 0) return 0;
  EchelonBasis basis(field, static_cast<std::size_t>(binom(k + m.n, m.n)));
  for_each_derivative_row(cfg, m, k, field, [&](std::span<u64> row) {
    basis.add(row);
    return !basis.full();
  });
  return basis.rank();
}

/// h(r;k) in P^n as the minimum over seeds of cols - rank. Entries r_i <= 0
/// make every degree-k form part of the span; negative k gives 0.
inline RankResult oracle_h(const RemainderVector& r, Int k, const OracleOptions& opt = {}) {
  if (opt.seeds.empty()) throw domain_error("oracle needs at least one seed");
  if (r.n < 1) throw domain_error("projective dimension must be positive");
  const PrimeField field(opt.prime);
  if (k >= 0 && opt.prime <= static_cast<u64>(k)) {
    throw domain_error("prime " + std::to_string(opt.prime) + " must exceed the degree " + std::to_string(k));
  }
  RankResult res;
  res.method = opt.method;
  res.seeds_used = opt.seeds;
  res.n = r.n;
  res.prime = opt.prime;
  res.kind = opt.kind;
  res.cols = k < 0 ? 0 : static_cast<std::size_t>(binom(k + r.n, r.n));
  res.rows = dual_span_row_count(r, k);
  // points with r_i > k impose nothing; they become order-0 conditions
  MultiplicityVector m = to_multiplicities(r, k);
  for (Int& mi : m.entries) mi = std::max<Int>(mi, 0);
  if (opt.method == OracleMethod::derivative_conditions) res.rows = derivative_row_count(m, k);

  bool first = true;
  for (u64 seed : opt.seeds) {
    const auto cfg = sample_configuration(opt.kind, r.n, r.size(), seed, field);
    SeedOutcome out{seed, 0, 0, std::nullopt};
    if (opt.method == OracleMethod::derivative_conditions) {
      out.rank = derivative_rank(cfg, m, k, field);
    } else {
      out.rank = dual_span_rank(cfg, r, k, field);
    }
    out.h = static_cast<Int>(res.cols) - static_cast<Int>(out.rank);
    if (opt.method == OracleMethod::both) {
      out.d = static_cast<Int>(res.cols) - static_cast<Int>(derivative_rank(cfg, m, k, field));
      if (*out.d != out.h) res.duality_agrees = false;
    }
    if (first || out.h < res.value_h) {
      res.value_h = out.h;
      res.rank = out.rank;
    }
    if (!first && out.h != res.per_seed.front().h) res.consensus = false;
    first = false;
    res.per_seed.push_back(out);
  }
  res.value_d = res.value_h;
  return res;
}

/// d(m;k) through the same machinery, with r_i = k - m_i + 1.
inline RankResult oracle_d(const MultiplicityVector& m, Int k, const OracleOptions& opt = {}) {
  for (Int mi : m.entries) {
    if (mi < 0) throw domain_error("multiplicities must be nonnegative");
  }
  return oracle_h(to_remainders(m, k), k, opt);
}

}  // namespace fatpoints
