#include <gtest/gtest.h>

#include "nestlie/exactla.hpp"
#include "nestlie/random.hpp"

using namespace nestlie;

namespace {

Mat m2(int a, int b, int c, int d) { return Mat(2, 2, {a, b, c, d}); }

Mat random_matrix(Rng& rng, std::size_t r, std::size_t c, std::int64_t bound = 3) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng.uniform(0, 2) != 0) m(i, j) = rng.small_gaussian(bound);
  return m;
}

}  // namespace

TEST(GaussianRational, NormalizesAndStaysExact) {
  GaussianRational a(Rational(2, 4), Rational(-3, 6));
  EXPECT_EQ(to_string(a.re()), "1/2");
  EXPECT_EQ(to_string(a.im()), "-1/2");
  GaussianRational i(Rational(0), Rational(1));
  EXPECT_EQ(i * i, GaussianRational(-1));
  EXPECT_EQ((a / a), GaussianRational(1));
  GaussianRational third(Rational(1, 3));
  EXPECT_EQ(third + third + third, GaussianRational(1));
}

TEST(GaussianRational, FieldAxiomsOnSamples) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    GaussianRational x = rng.small_gaussian(), y = rng.small_gaussian(), z = rng.small_gaussian();
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x * y) * z, x * (y * z));
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
    }
  }
}

TEST(GaussianRational, DivisionByZeroThrows) { EXPECT_THROW(GaussianRational(1) / GaussianRational(0), InvalidArgument); }

TEST(GaussianRational, ParseRational) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), SchemaError);
  EXPECT_THROW(parse_rational("x"), SchemaError);
  EXPECT_THROW(parse_rational(""), SchemaError);
}

TEST(MatMul, Examples) {
  const Mat m = m2(1, 2, 3, 4);
  EXPECT_EQ(mat_mul(Mat::identity(2), m), m);
  EXPECT_EQ(mat_mul(Mat::unit(2, 0, 0), Mat::unit(2, 0, 1)), Mat::unit(2, 0, 1));
  EXPECT_EQ(mat_mul(Mat::unit(2, 1, 0), Mat::unit(2, 0, 1)), Mat::unit(2, 1, 1));
  EXPECT_THROW(mat_mul(Mat(2, 3), Mat(2, 3)), DimensionMismatch);
}

TEST(Commutator, Examples) {
  const Mat m = m2(1, 2, 3, 4);
  EXPECT_TRUE(commutator(m, m).is_zero());
  EXPECT_EQ(commutator(Mat::unit(2, 0, 0), Mat::unit(2, 0, 1)), Mat::unit(2, 0, 1));
  // E22 E21 - E21 E22 = E21 - 0
  EXPECT_EQ(commutator(Mat::unit(2, 1, 1), Mat::unit(2, 1, 0)), Mat::unit(2, 1, 0));
  EXPECT_THROW(commutator(Mat(2, 2), Mat(3, 3)), DimensionMismatch);
}

TEST(Commutator, WithUnitMatchesFullProduct) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Mat a = random_matrix(rng, 4, 4);
    const auto i = static_cast<std::size_t>(rng.uniform(0, 3));
    const auto j = static_cast<std::size_t>(rng.uniform(0, 3));
    EXPECT_EQ(commutator_with_unit(a, i, j), commutator(a, Mat::unit(4, i, j)));
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(Mat::identity(2)).dim(), 0u);
  EXPECT_EQ(kernel(Mat(2, 2)).dim(), 2u);
  const auto k = kernel(m2(1, 1, 0, 0));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis()[0], (Vec{1, -1}));
}

TEST(Solve, Examples) {
  EXPECT_EQ(*solve(Mat::identity(2), Vec{1, 2}), (Vec{1, 2}));
  EXPECT_FALSE(solve(m2(1, 0, 1, 0), Vec{1, 2}).has_value());
  EXPECT_EQ(*solve(Mat(1, 2, {1, 1}), Vec{3}), (Vec{3, 0}));
}

TEST(Annihilator, Examples) {
  const auto e1 = Subspace::span(2, {basis_vector(2, 0)});
  EXPECT_EQ(annihilator(e1), Subspace::span(2, {basis_vector(2, 1)}));
  EXPECT_EQ(annihilator(Subspace::full(3)).dim(), 0u);
  const auto a = annihilator(Subspace::span(3, {Vec{1, 1, 0}}));
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_TRUE(a.contains(Vec{1, -1, 0}));
}

TEST(Intersect, Examples) {
  const auto e = [](std::size_t i) { return basis_vector(3, i); };
  const auto s = Subspace::span(3, {e(0), e(1)});
  EXPECT_EQ(intersect(s, s), s);
  EXPECT_EQ(intersect(Subspace::span(3, {e(0)}), Subspace::span(3, {e(1)})).dim(), 0u);
  EXPECT_EQ(intersect(s, Subspace::span(3, {e(1), e(2)})), Subspace::span(3, {e(1)}));
}

TEST(Subspace, BasisIsReducedEchelon) {
  const auto s = Subspace::span(3, {Vec{2, 4, 6}, Vec{1, 2, 4}, Vec{3, 6, 10}});
  ASSERT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.basis()[0], (Vec{1, 2, 0}));
  EXPECT_EQ(s.basis()[1], (Vec{0, 0, 1}));
  EXPECT_EQ(s.pivots(), (std::vector<std::size_t>{0, 2}));
}

TEST(Properties, RankNullity) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto c = static_cast<std::size_t>(rng.uniform(1, 5));
    const Mat m = random_matrix(rng, r, c);
    const auto k = kernel(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    for (const auto& v : k.basis()) EXPECT_TRUE(is_zero_vector<GaussianRational>(mat_vec<GaussianRational>(m, v)));
  }
}

TEST(Properties, Biduality) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Mat m = random_matrix(rng, static_cast<std::size_t>(rng.uniform(0, 4)), 4);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
    const auto s = Subspace::span(4, rows);
    EXPECT_EQ(annihilator(annihilator(s)), s);
    EXPECT_EQ(annihilator(s).dim(), 4 - s.dim());
  }
}

TEST(Properties, SolveIsExactOrInconsistent) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Mat m = random_matrix(rng, 3, 3, 2);
    Vec b(3);
    for (auto& x : b) x = rng.small_gaussian(2);
    const auto x = solve(m, b);
    Mat aug(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) aug(i, j) = m(i, j);
      aug(i, 3) = b[i];
    }
    if (x) {
      EXPECT_EQ(mat_vec<GaussianRational>(m, *x), b);
    } else {
      EXPECT_GT(rank(aug), rank(m));
    }
  }
}

TEST(Properties, Deterministic) {
  Rng a(9), b(9);
  const Mat ma = random_matrix(a, 4, 6), mb = random_matrix(b, 4, 6);
  EXPECT_EQ(kernel(ma), kernel(mb));
  EXPECT_EQ(kernel(ma).basis(), kernel(mb).basis());
}

TEST(IncrementalKernel, AgreesWithDenseKernel) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 7;
    IncrementalKernel inc(m);
    const auto rows = static_cast<std::size_t>(rng.uniform(0, 8));
    Matrix<Rational> dense(rows, m);
    for (std::size_t r = 0; r < rows; ++r) {
      SparseRow row;
      for (std::uint32_t c = 0; c < m; ++c) {
        const auto v = rng.uniform(-2, 2);
        if (v != 0 && rng.uniform(0, 1) == 0) {
          row.emplace_back(c, v);
          dense(r, c) = static_cast<long>(v);
        }
      }
      inc.add_row(row);
    }
    EXPECT_EQ(inc.subspace(), kernel(dense));
  }
}

TEST(IncrementalKernel, FallsBackWhenEntriesGrow) {
  // Rows with large coefficients force denominators past the integer fast path.
  const std::size_t m = 6;
  IncrementalKernel inc(m);
  Matrix<Rational> dense(4, m);
  const std::int64_t big = std::int64_t{1} << 40;
  const std::int64_t coeffs[4][6] = {{big, 3, 0, 0, 1, 0}, {0, big - 1, 7, 0, 0, 1}, {1, 0, big + 3, 5, 0, 0}, {0, 2, 0, big, 9, 0}};
  for (std::size_t r = 0; r < 4; ++r) {
    SparseRow row;
    for (std::uint32_t c = 0; c < m; ++c)
      if (coeffs[r][c] != 0) {
        row.emplace_back(c, coeffs[r][c]);
        dense(r, c) = Rational(static_cast<long>(coeffs[r][c]));
      }
    inc.add_row(row);
  }
  EXPECT_EQ(inc.subspace(), kernel(dense));
}
