#include <gtest/gtest.h>

#include "nestlie/nestalg/nest.hpp"
#include "nestlie/nestalg/subalgebra.hpp"
#include "nestlie/random.hpp"

using namespace nestlie;

namespace {

const std::vector<std::vector<std::size_t>> kSmallPartitions = {
    {1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {2, 2}, {1, 3}, {3, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {1, 1, 1, 1}};

Vec random_vector(Rng& rng, std::size_t n) {
  Vec v(n);
  for (auto& x : v)
    if (rng.uniform(0, 2) != 0) x = rng.small_gaussian(3);
  return v;
}

bool kills(const Vec& f, const Subspace& s) {
  for (const auto& v : s.basis())
    if (!pair<GaussianRational>(f, v).is_zero()) return false;
  return true;
}

/// x in N_j and f vanishing on N_{j-1}.
bool witnesses(const NestSpec& s, std::size_t j, const Vec& x, const Vec& f) {
  return nest_element(s, j).contains(x) && kills(f, nest_element(s, j - 1));
}

}  // namespace

TEST(NestSpec, RejectsBadBlocks) {
  EXPECT_THROW(NestSpec({3}), SchemaError);
  EXPECT_THROW(NestSpec({0, 1}), SchemaError);
  EXPECT_THROW(NestSpec(std::vector<std::size_t>{}), SchemaError);
  EXPECT_EQ(NestSpec({1, 2}).size(), 3u);
}

TEST(AlgebraBasis, Examples) {
  const AlgBasis b11(NestSpec({1, 1}));
  ASSERT_EQ(b11.size(), 3u);
  EXPECT_EQ(b11.unit(0), (MatrixUnit{0, 0}));
  EXPECT_EQ(b11.unit(1), (MatrixUnit{0, 1}));
  EXPECT_EQ(b11.unit(2), (MatrixUnit{1, 1}));
  EXPECT_EQ(AlgBasis(NestSpec({1, 2})).size(), 7u);
  EXPECT_EQ(AlgBasis(NestSpec({2, 2})).size(), 12u);
}

TEST(AlgebraBasis, DimensionFormulaAndClosure) {
  for (const auto& blocks : kSmallPartitions) {
    const NestSpec s(blocks);
    const AlgBasis b(s);
    std::size_t expected = 0;
    for (std::size_t p = 0; p < blocks.size(); ++p)
      for (std::size_t q = p; q < blocks.size(); ++q) expected += blocks[p] * blocks[q];
    EXPECT_EQ(b.size(), expected);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(b.index_of(i, i).has_value());
    for (std::size_t u = 0; u < b.size(); ++u)
      for (std::size_t v = 0; v < b.size(); ++v) EXPECT_TRUE(contains(s, mat_mul(b.unit_matrix(u), b.unit_matrix(v))));
  }
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(NestSpec({1, 1}), Mat::unit(2, 0, 1)));
  EXPECT_FALSE(contains(NestSpec({1, 1}), Mat::unit(2, 1, 0)));
  EXPECT_TRUE(contains(NestSpec({2, 1}), Mat::unit(3, 1, 0)));
}

TEST(RankOne, Examples) {
  EXPECT_EQ(rank_one(basis_vector(2, 0), basis_vector(2, 1)), Mat::unit(2, 0, 1));
  EXPECT_TRUE(rank_one(Vec(2), Vec{1, 2}).is_zero());
  EXPECT_EQ(rank_one(Vec{1, 1}, basis_vector(2, 0)), Mat::unit(2, 0, 0) + Mat::unit(2, 1, 0));
}

TEST(RankOneInAlg, Examples) {
  const NestSpec s11({1, 1});
  auto r = rank_one_in_alg(s11, basis_vector(2, 0), basis_vector(2, 0));
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.witness, std::optional<std::size_t>(1));
  r = rank_one_in_alg(s11, basis_vector(2, 1), basis_vector(2, 0));
  EXPECT_FALSE(r.member);
  EXPECT_FALSE(r.witness.has_value());
  r = rank_one_in_alg(NestSpec({1, 2}), basis_vector(3, 0), basis_vector(3, 2));
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.witness, std::optional<std::size_t>(1));
  EXPECT_THROW(rank_one_in_alg(s11, Vec(2), basis_vector(2, 0)), InvalidArgument);
}

TEST(RankOneInAlg, AgreesWithContainsAndNestOracle) {
  Rng rng(17);
  for (const auto& blocks : kSmallPartitions) {
    const NestSpec s(blocks);
    const std::size_t n = s.size();
    auto check = [&](const Vec& x, const Vec& f) {
      const auto r = rank_one_in_alg(s, x, f);
      EXPECT_EQ(r.member, contains(s, rank_one(x, f)));
      std::optional<std::size_t> least;
      for (std::size_t j = s.depth(); j >= 1; --j)
        if (witnesses(s, j, x, f)) least = j;
      EXPECT_EQ(r.witness, least);
      EXPECT_EQ(r.member, least.has_value());
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) check(basis_vector(n, i), basis_vector(n, j));
    for (int t = 0; t < 300; ++t) {
      Vec x = random_vector(rng, n), f = random_vector(rng, n);
      if (is_zero_vector<GaussianRational>(x) || is_zero_vector<GaussianRational>(f)) continue;
      check(x, f);
    }
  }
}

TEST(NestOrder, MinusAndPlus) {
  const NestSpec s({1, 2, 1});
  EXPECT_EQ(n_minus(s, 0), 0u);
  EXPECT_EQ(n_minus(s, 1), 0u);
  EXPECT_EQ(n_minus(s, 3), 2u);
  EXPECT_EQ(n_plus(s, 3), 3u);
  EXPECT_EQ(n_plus(s, 0), 1u);
  EXPECT_THROW(n_minus(s, 4), InvalidArgument);
}

TEST(XMinusPerp, Examples) {
  const auto e = [](std::size_t n, std::size_t i) { return basis_vector(n, i); };
  EXPECT_EQ(x_minus_perp(NestSpec({2, 1})), Subspace::span(3, {e(3, 2)}));
  EXPECT_EQ(x_minus_perp(NestSpec({1, 2})), Subspace::span(3, {e(3, 1), e(3, 2)}));
  EXPECT_EQ(x_minus_perp(NestSpec({1, 1, 1})), Subspace::span(3, {e(3, 2)}));
  for (const auto& blocks : kSmallPartitions) EXPECT_EQ(x_minus_perp(NestSpec(blocks)).dim(), blocks.back());
}

TEST(CenterRelative, IsScalarsOnly) {
  for (const auto& blocks : kSmallPartitions) {
    const NestSpec s(blocks);
    const auto c = center_relative(s);
    EXPECT_EQ(c.dim(), 1u) << s.str();
    EXPECT_TRUE(c.contains(Mat::identity(s.size()).entries()));
  }
  EXPECT_EQ(center_relative(NestSpec({2, 2, 2})).dim(), 1u);
  EXPECT_EQ(center_relative(NestSpec({1, 4, 1})).dim(), 1u);
}

TEST(TraceArgument, CommutatorNeverNonzeroScalar) {
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    Mat a(n, n), b(n, n);
    for (auto& x : a.entries()) x = rng.small_integer(3);
    for (auto& x : b.entries()) x = rng.small_integer(3);
    const Mat c = commutator(a, b);
    EXPECT_TRUE(trace(c).is_zero());
    GaussianRational lambda;
    if (is_scalar_matrix(c, &lambda)) {
      EXPECT_TRUE(lambda.is_zero());
    }
  }
}

TEST(DualNest, ExamplesAndInvolution) {
  EXPECT_EQ(dual_nest(NestSpec({1, 2})).spec, NestSpec({2, 1}));
  EXPECT_EQ(dual_nest(NestSpec({1, 1})).spec, NestSpec({1, 1}));
  EXPECT_EQ(iota(Mat::unit(2, 0, 1)), Mat::unit(2, 0, 1));
  Rng rng(8);
  for (const auto& blocks : kSmallPartitions) {
    const NestSpec s(blocks);
    const auto d = dual_nest(s);
    EXPECT_EQ(dual_nest(d.spec).spec, s);
    const AlgBasis b(s);
    for (int t = 0; t < 20; ++t) {
      Vec ca(b.size()), cb(b.size());
      for (auto& x : ca) x = rng.small_gaussian(2);
      for (auto& x : cb) x = rng.small_gaussian(2);
      const Mat a = b.element(ca), bb = b.element(cb);
      EXPECT_EQ(iota(iota(a)), a);
      EXPECT_TRUE(contains(d.spec, iota(a)));
      EXPECT_EQ(iota(mat_mul(a, bb)), mat_mul(iota(bb), iota(a)));
    }
    const AlgBasis db(d.spec);
    for (std::size_t u = 0; u < db.size(); ++u) EXPECT_EQ(iota(b.unit_matrix(d.reindex[u])), db.unit_matrix(u));
  }
}

TEST(Subalgebra, RejectsNonClosedAndOutside) {
  EXPECT_THROW(SubalgebraSpec(NestSpec({1, 1}), {Mat::unit(2, 1, 0)}), NotInAlgebra);
  const Mat a = Mat::unit(3, 0, 1), b = Mat::unit(3, 1, 2);
  EXPECT_THROW(SubalgebraSpec(NestSpec({1, 1, 1}), {a, b}), SchemaError);
  EXPECT_TRUE(SubalgebraSpec(NestSpec({1, 1, 1}), {a, b, Mat::unit(3, 0, 2)}).closed_under_product());
}

TEST(Spade, FullAlgebra) {
  for (const auto& blocks : std::vector<std::vector<std::size_t>>{{1, 2}, {2, 1}, {2, 2}, {1, 1, 1}, {1, 3}}) {
    const auto r = check_spade(SubalgebraSpec::full(NestSpec(blocks)), 42);
    EXPECT_EQ(r.seed, 42u);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(r.spade[k], Verdict::Proved);
    for (int k = 3; k < 6; ++k) EXPECT_EQ(r.spade[k], Verdict::SampledConsistent);
  }
}

TEST(Spade, FullAlgebraOnTwoByTwoFailsFour) {
  // With N = 2, ker f meets X in a line, so dim > 1 cannot hold.
  const auto r = check_spade(SubalgebraSpec::full(NestSpec({1, 1})));
  EXPECT_EQ(r.spade[3], Verdict::Refuted);
}

TEST(Spade, ScalarsHaveNoRankOnes) {
  const auto r = check_spade(SubalgebraSpec(NestSpec({1, 2}), {Mat::identity(3)}));
  EXPECT_EQ(r.spade[0], Verdict::Refuted);
  EXPECT_EQ(r.spade[4], Verdict::Refuted);
}

TEST(Spade, StrictlyUpperUnit) {
  const auto r = check_spade(SubalgebraSpec(NestSpec({1, 1}), {Mat::unit(2, 0, 1)}));
  EXPECT_EQ(r.spade[0], Verdict::Proved);
  EXPECT_EQ(r.spade[1], Verdict::Refuted);
}

TEST(Spade, DeterministicForSeed) {
  const auto sub = SubalgebraSpec::full(NestSpec({1, 1, 2}));
  const auto a = check_spade(sub, 5), b = check_spade(sub, 5);
  EXPECT_EQ(a.spade, b.spade);
}
