#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/field.hpp"
#include "fatpoints/monomials.hpp"
#include "fatpoints/nagata.hpp"
#include "fatpoints/oracle.hpp"
#include "support.hpp"

namespace fp = fatpoints;
using fp::Int;
using fp::Matrix;
using fp::MultiplicityVector;
using fp::PointKind;
using fp::PrimeField;
using fp::RemainderVector;
using fp::u64;

namespace {

RemainderVector plane(std::vector<Int> r) { return RemainderVector{std::move(r), 2}; }

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Matrix random_matrix(fp::testing::Gen& g, std::size_t rows, std::size_t cols, std::size_t planted_rank,
                     const PrimeField& f) {
  // product of a rows x planted and a planted x cols random matrix
  Matrix a(rows, planted_rank), b(planted_rank, cols), m(rows, cols);
  const Int top = static_cast<Int>(std::min<u64>(f.modulus() - 1, u64{1} << 40));
  for (auto& x : a.data) x = static_cast<u64>(g.uniform(0, top));
  for (auto& x : b.data) x = static_cast<u64>(g.uniform(0, top));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      u64 s = 0;
      for (std::size_t t = 0; t < planted_rank; ++t) s = f.add(s, f.mul(a.at(i, t), b.at(t, j)));
      m.at(i, j) = s;
    }
  }
  return m;
}

}  // namespace

TEST(Field, PrimalityMatchesTrialDivision) {
  for (u64 n = 0; n < 5000; ++n) EXPECT_EQ(fp::is_prime_u64(n), trial_division_prime(n)) << n;
  EXPECT_TRUE(fp::is_prime_u64(PrimeField::kMersenne61));
  EXPECT_FALSE(fp::is_prime_u64((u64{1} << 61) + 1));
  EXPECT_TRUE(fp::is_prime_u64(1000003));
}

TEST(Field, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(15), fp::domain_error);
  EXPECT_THROW(PrimeField(1), fp::domain_error);
  EXPECT_THROW(PrimeField((u64{1} << 63) + 29), fp::domain_error);
}

TEST(Field, ArithmeticIdentities) {
  fp::testing::Gen g(41);
  for (u64 p : {PrimeField::kMersenne61, u64{1000003}, u64{4611686018427387847ULL}}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 2000; ++trial) {
      const u64 a = static_cast<u64>(g.uniform(0, static_cast<Int>(p - 1)));
      const u64 b = static_cast<u64>(g.uniform(0, static_cast<Int>(p - 1)));
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.mul(a, b), static_cast<u64>((static_cast<fp::u128>(a) * b) % p));
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
    }
    EXPECT_EQ(f.from_int(-1), p - 1);
    EXPECT_EQ(f.from_int(static_cast<std::int64_t>(p) + 5), 5u);
    EXPECT_THROW(f.inv(0), fp::domain_error);
  }
}

TEST(Field, RowKernels) {
  fp::testing::Gen g(42);
  for (u64 p : {PrimeField::kMersenne61, u64{1000003}}) {
    const PrimeField f(p);
    std::vector<u64> dst(37), src(37);
    for (auto& x : dst) x = static_cast<u64>(g.uniform(0, static_cast<Int>(p - 1)));
    for (auto& x : src) x = static_cast<u64>(g.uniform(0, static_cast<Int>(p - 1)));
    const u64 factor = static_cast<u64>(g.uniform(1, static_cast<Int>(p - 1)));
    auto expected = dst;
    for (std::size_t j = 0; j < dst.size(); ++j) expected[j] = f.sub(dst[j], f.mul(factor, src[j]));
    f.sub_mul_row(dst, src, factor);
    EXPECT_EQ(dst, expected);
  }
}

TEST(Monomials, IndexMatchesEnumeration) {
  for (int vars = 1; vars <= 4; ++vars) {
    for (Int d = 0; d <= 9; ++d) {
      const fp::MonomialBasis b(vars, d);
      EXPECT_EQ(static_cast<Int>(b.size()), fp::binom(d + vars - 1, vars - 1));
      for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_EQ(b.index_of(b[i]), i);
        Int total = 0;
        for (Int e : b[i]) total += e;
        EXPECT_EQ(total, d);
        if (i > 0) {
          EXPECT_TRUE(std::lexicographical_compare(b[i].begin(), b[i].end(), b[i - 1].begin(), b[i - 1].end()));
        }
      }
    }
  }
  const fp::MonomialBasis b(3, 2);
  EXPECT_EQ(b[0][0], 2);
  EXPECT_EQ(b[b.size() - 1][2], 2);
}

TEST(Configuration, DeterministicAndKindSensitive) {
  const PrimeField f;
  const auto a = fp::sample_configuration(PointKind::generic, 2, 6, 7, f);
  const auto b = fp::sample_configuration(PointKind::generic, 2, 6, 7, f);
  const auto c = fp::sample_configuration(PointKind::generic, 2, 6, 8, f);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  for (const auto& p : a.points) {
    ASSERT_EQ(p.size(), 3u);
    for (u64 x : p) {
      EXPECT_GE(x, 1u);
      EXPECT_LT(x, f.modulus());
    }
  }
}

TEST(Configuration, StructuredKinds) {
  const PrimeField f;
  for (u64 seed = 1; seed <= 5; ++seed) {
    const auto conic = fp::sample_configuration(PointKind::conic, 2, 4, seed, f);
    std::set<u64> ts;
    for (const auto& p : conic.points) {
      EXPECT_EQ(p[0], 1u);
      EXPECT_EQ(p[2], f.mul(p[1], p[1]));
      ts.insert(p[1]);
    }
    EXPECT_EQ(ts.size(), 4u);

    const auto cubic = fp::sample_configuration(PointKind::cubic, 2, 9, seed, f);
    u64 sum = 0;
    for (const auto& p : cubic.points) {
      EXPECT_EQ(p[2], f.mul(p[1], f.mul(p[1], p[1])));
      sum = f.add(sum, p[1]);
    }
    EXPECT_NE(sum, 0u);

    const auto line = fp::sample_configuration(PointKind::collinear, 3, 6, seed, f);
    for (const auto& p : line.points) EXPECT_EQ(p.back(), 0u);

    const auto std_pts = fp::sample_configuration(PointKind::standard_plus_generic, 2, 5, seed, f);
    EXPECT_EQ(std_pts.points[1], (std::vector<u64>{0, 1, 0}));
  }
  EXPECT_THROW(fp::sample_configuration(PointKind::conic, 3, 4, 1, f), fp::domain_error);
  EXPECT_THROW(fp::sample_configuration(PointKind::generic, 2, 0, 1, f), fp::domain_error);
}

TEST(Rank, SmallMatrices) {
  const PrimeField f;
  Matrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1;
  EXPECT_EQ(fp::rank_mod_p(id, f), 3u);
  EXPECT_EQ(fp::rank_mod_p(Matrix(4, 5), f), 0u);
  EXPECT_EQ(fp::rank_mod_p(Matrix(0, 5), f), 0u);
}

TEST(Rank, EchelonBasisAgreesWithElimination) {
  fp::testing::Gen g(43);
  for (u64 p : {PrimeField::kMersenne61, u64{1000003}}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 60; ++trial) {
      const auto rows = static_cast<std::size_t>(g.uniform(1, 30));
      const auto cols = static_cast<std::size_t>(g.uniform(1, 30));
      const auto planted = static_cast<std::size_t>(g.uniform(0, static_cast<Int>(std::min(rows, cols))));
      Matrix m = random_matrix(g, rows, cols, planted, f);
      const auto r = fp::rank_mod_p(m, f);
      EXPECT_EQ(r, planted);
      fp::EchelonBasis basis(f, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        std::vector<u64> row(m.row(i).begin(), m.row(i).end());
        basis.add(row);
      }
      EXPECT_EQ(basis.rank(), r);
    }
  }
}

TEST(DualSpan, SinglePowerAndEmpty) {
  const PrimeField f;
  for (Int k = 1; k <= 6; ++k) {
    const auto cfg = fp::sample_configuration(PointKind::generic, 2, 1, 3, f);
    const auto m = fp::dual_span_matrix(cfg, plane({k}), k, f);
    EXPECT_EQ(m.rows, 1u);
    EXPECT_EQ(fp::rank_mod_p(m, f), 1u);
    const auto h = fp::oracle_h(plane({k}), k);
    EXPECT_EQ(h.value_h, fp::binom(k + 2, 2) - 1);
  }
  const auto cfg = fp::sample_configuration(PointKind::generic, 2, 3, 3, f);
  EXPECT_EQ(fp::dual_span_matrix(cfg, plane({5, 6, 7}), 4, f).rows, 0u);
  EXPECT_EQ(fp::oracle_h(plane({5, 6, 7}), 4).value_h, 15);
}

TEST(DualSpan, DoubleConicException) {
  const PrimeField f;
  const auto cfg = fp::sample_configuration(PointKind::generic, 2, 5, 1, f);
  const auto m = fp::dual_span_matrix(cfg, plane({3, 3, 3, 3, 3}), 4, f);
  EXPECT_EQ(m.rows, 15u);
  EXPECT_EQ(m.cols, 15u);
  EXPECT_EQ(fp::rank_mod_p(m, f), 14u);
  EXPECT_EQ(fp::dual_span_row_count(plane({3, 3, 3, 3, 3}), 4), 15u);
}

TEST(Derivative, Examples) {
  const PrimeField f;
  const auto cfg5 = fp::sample_configuration(PointKind::generic, 2, 5, 2, f);
  const auto m1 = fp::derivative_matrix(cfg5, MultiplicityVector{std::vector<Int>(5, 1), 2}, 2, f);
  EXPECT_EQ(fp::rank_mod_p(m1, f), 5u);
  EXPECT_EQ(fp::oracle_d(MultiplicityVector{std::vector<Int>(5, 1), 2}, 2).value_d, 1);
  fp::OracleOptions both;
  both.method = fp::OracleMethod::both;
  const auto r = fp::oracle_d(MultiplicityVector{std::vector<Int>(5, 2), 2}, 4, both);
  EXPECT_EQ(r.value_d, 1);
  EXPECT_TRUE(r.duality_agrees);
  for (const auto& s : r.per_seed) EXPECT_EQ(s.d, 1);
  EXPECT_EQ(fp::oracle_d(MultiplicityVector{std::vector<Int>(9, 1), 2}, 3).value_d, 1);
  EXPECT_THROW(fp::oracle_d(MultiplicityVector{{-1}, 2}, 3), fp::domain_error);
}

TEST(Derivative, OrderCappedAtDegreePlusOne) {
  const MultiplicityVector m{{9, 1}, 2};
  EXPECT_EQ(fp::derivative_row_count(m, 3), static_cast<std::size_t>(fp::binom(3 + 2, 2) + 1));
  fp::OracleOptions opt;
  opt.method = fp::OracleMethod::derivative_conditions;
  EXPECT_EQ(fp::oracle_d(m, 3, opt).value_d, 0);
}

TEST(OracleH, Examples) {
  const auto a = fp::oracle_h(plane({2, 2, 2, 2}), 2);
  EXPECT_EQ(a.value_h, 2);
  EXPECT_TRUE(a.consensus);
  EXPECT_EQ(a.seeds_used, (std::vector<u64>{1, 2, 3}));
  EXPECT_EQ(a.per_seed.size(), 3u);
  const auto b = fp::oracle_h(plane(std::vector<Int>(6, 15)), 24);
  EXPECT_EQ(b.value_h, 1);
  EXPECT_EQ(fp::virtual_dim_c(plane(std::vector<Int>(6, 15)), 24), 0);
}

TEST(OracleH, Errors) {
  fp::OracleOptions opt;
  opt.prime = 7;
  EXPECT_THROW(fp::oracle_h(plane({2, 2, 2}), 7, opt), fp::domain_error);
  EXPECT_NO_THROW(fp::oracle_h(plane({2, 2, 2}), 6, opt));
  opt.prime = 9;
  EXPECT_THROW(fp::oracle_h(plane({2, 2, 2}), 2, opt), fp::domain_error);
  opt.prime = PrimeField::kMersenne61;
  opt.seeds.clear();
  EXPECT_THROW(fp::oracle_h(plane({2, 2, 2}), 2, opt), fp::domain_error);
}

TEST(OracleH, Deterministic) {
  fp::OracleOptions opt;
  opt.method = fp::OracleMethod::both;
  const auto a = fp::oracle_h(plane({3, 4, 4, 5, 2}), 6, opt);
  const auto b = fp::oracle_h(plane({3, 4, 4, 5, 2}), 6, opt);
  EXPECT_EQ(a.value_h, b.value_h);
  EXPECT_EQ(a.rank, b.rank);
  ASSERT_EQ(a.per_seed.size(), b.per_seed.size());
  for (std::size_t i = 0; i < a.per_seed.size(); ++i) {
    EXPECT_EQ(a.per_seed[i].rank, b.per_seed[i].rank);
    EXPECT_EQ(a.per_seed[i].d, b.per_seed[i].d);
  }
  const PrimeField f;
  const auto cfg = fp::sample_configuration(PointKind::generic, 2, 5, 9, f);
  EXPECT_EQ(fp::dual_span_matrix(cfg, plane({3, 4, 4, 5, 2}), 6, f),
            fp::dual_span_matrix(cfg, plane({3, 4, 4, 5, 2}), 6, f));
}

TEST(OracleH, DualityOnRandomProblems) {
  fp::testing::Gen g(44);
  fp::OracleOptions opt;
  opt.seeds = {1, 2};
  opt.method = fp::OracleMethod::both;
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = plane(g.vec(static_cast<std::size_t>(g.uniform(1, 9)), 1, 8));
    const Int k = g.uniform(0, 10);
    const auto res = fp::oracle_h(r, k, opt);
    EXPECT_TRUE(res.duality_agrees);
    for (const auto& s : res.per_seed) EXPECT_EQ(s.d, s.h);
  }
}

TEST(OracleH, AtLeastVirtualDimension) {
  fp::testing::Gen g(45);
  fp::OracleOptions opt;
  opt.seeds = {5};
  for (int trial = 0; trial < 40; ++trial) {
    const auto r = plane(g.vec(static_cast<std::size_t>(g.uniform(1, 12)), 1, 6));
    const Int k = g.uniform(0, 10);
    EXPECT_GE(fp::oracle_h(r, k, opt).value_h, fp::virtual_dim_c(r, k));
  }
}

TEST(OracleH, StructuredKindsNeverBeatGeneric) {
  fp::testing::Gen g(46);
  for (int trial = 0; trial < 25; ++trial) {
    const auto r = plane(g.vec(static_cast<std::size_t>(g.uniform(2, 7)), 1, 5));
    const Int k = g.uniform(0, 8);
    const Int generic = fp::oracle_h(r, k).value_h;
    for (PointKind kind : {PointKind::collinear, PointKind::conic, PointKind::cubic, PointKind::standard_plus_generic}) {
      fp::OracleOptions opt;
      opt.kind = kind;
      EXPECT_GE(fp::oracle_h(r, k, opt).value_h, generic) << fp::to_string(kind);
    }
  }
}

// Points on a line already reach the generic value once k > sum m_i.
TEST(OracleH, CollinearAttainsGenericAboveTotalMultiplicity) {
  fp::testing::Gen g(47);
  fp::OracleOptions opt;
  opt.kind = PointKind::collinear;
  opt.seeds = {1};
  for (int trial = 0; trial < 25; ++trial) {
    const MultiplicityVector m{g.vec(static_cast<std::size_t>(g.uniform(1, 6)), 0, 3), 2};
    Int total = 0;
    for (Int mi : m.entries) total += mi;
    const Int k = total + g.uniform(1, 3);
    EXPECT_EQ(fp::oracle_d(m, k, opt).value_d, fp::virtual_dim_c(fp::to_remainders(m, k), k));
  }
}

TEST(OracleH, ProjectiveLineMatchesClosedForm) {
  fp::testing::Gen g(48);
  for (int trial = 0; trial < 60; ++trial) {
    const RemainderVector r{g.vec(static_cast<std::size_t>(g.uniform(1, 6)), -1, 10), 1};
    const Int k = g.uniform(0, 14);
    EXPECT_EQ(fp::oracle_h(r, k).value_h, fp::h_line(r.entries, k));
  }
}

TEST(OracleH, SimplePointsInSpace) {
  for (Int l = 1; l <= 12; ++l) {
    for (Int k = 0; k <= 3; ++k) {
      const MultiplicityVector m{std::vector<Int>(static_cast<std::size_t>(l), 1), 3};
      EXPECT_EQ(fp::oracle_d(m, k).value_d, fp::trunc_int(fp::binom(k + 3, 3) - l));
    }
  }
}

TEST(OracleH, SmallPrimeAgrees) {
  fp::OracleOptions opt;
  opt.prime = 1000003;
  EXPECT_EQ(fp::oracle_h(plane({3, 3, 3, 3, 3}), 4, opt).value_h, 1);
  EXPECT_EQ(fp::oracle_h(plane({4, 4, 5, 5, 6, 6}), 8, opt).value_h, fp::h_value(plane({4, 4, 5, 5, 6, 6}), 8));
}
