#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stabg/errors.hpp"
#include "stabg/linalg.hpp"

using namespace stabg;

namespace {

IntMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, int(n) - 1), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    std::size_t a = std::size_t(pick(rng)), b = std::size_t(pick(rng));
    if (a == b) continue;
    IntMatrix e = IntMatrix::identity(n);
    e.at(a, b) = coef(rng);
    u = u * e;
  }
  return u;
}

}  // namespace

TEST(Rref, IdentityAndZero) {
  auto id = rref(FpMatrix::identity(2, 2));
  EXPECT_EQ(id.reduced, FpMatrix::identity(2, 2));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(id.rank, 2u);
  auto z = rref(FpMatrix(2, 3, 3));
  EXPECT_TRUE(z.reduced.is_zero());
  EXPECT_TRUE(z.pivots.empty());
  EXPECT_EQ(z.rank, 0u);
}

TEST(Rref, OnesMatrix) {
  auto r = rref(FpMatrix::from_rows(2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(r.reduced, FpMatrix::from_rows(2, {{1, 1}, {0, 0}}));
  EXPECT_EQ(r.rank, 1u);
}

TEST(Rref, OddPrimeNormalisesPivots) {
  auto r = rref(FpMatrix::from_rows(5, {{2, 4}, {3, 2}}));
  EXPECT_EQ(r.reduced, FpMatrix::identity(5, 2));
}

TEST(Solve, Examples) {
  auto b = FpMatrix::from_rows(2, {{1, 0}, {1, 1}});
  auto s = solve(FpMatrix::identity(2, 2), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  EXPECT_TRUE(s->nullspace.empty());

  auto z = solve(FpMatrix(2, 2, 2), FpMatrix(2, 2, 1));
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->particular.is_zero());
  EXPECT_EQ(z->nullspace.size(), 2u);

  auto one = solve(FpMatrix::from_rows(2, {{1, 1}}), FpMatrix::from_rows(2, {{1}}));
  ASSERT_TRUE(one);
  EXPECT_EQ(one->particular, FpMatrix::from_rows(2, {{1}, {0}}));
  ASSERT_EQ(one->nullspace.size(), 1u);
  EXPECT_EQ(one->nullspace[0], (Vec{1, 1}));
  // Oracle: enumerate all 4 vectors.
  std::size_t hits = 0;
  for (const auto& v : oracle::all_vectors(2, 2))
    if ((v[0] + v[1]) % 2 == 1) ++hits;
  EXPECT_EQ(hits, std::size_t(1) << one->nullspace.size());
}

TEST(Solve, Inconsistent) {
  EXPECT_FALSE(solve(FpMatrix(2, 1, 1), FpMatrix::from_rows(2, {{1}})));
  EXPECT_THROW(solve(FpMatrix(2, 2, 2), FpMatrix(2, 3, 1)), DimensionMismatch);
}

TEST(NullspaceImage, Examples) {
  EXPECT_TRUE(nullspace_basis(FpMatrix::identity(3, 3)).empty());
  EXPECT_EQ(image_basis(FpMatrix::identity(3, 3)).size(), 3u);
  EXPECT_EQ(nullspace_basis(FpMatrix(2, 2, 2)).size(), 2u);
  EXPECT_TRUE(image_basis(FpMatrix(2, 2, 2)).empty());
  auto m = FpMatrix::from_rows(2, {{1, 1}, {0, 0}});
  EXPECT_EQ(nullspace_basis(m), (std::vector<Vec>{{1, 1}}));
  EXPECT_EQ(image_basis(m), (std::vector<Vec>{{1, 0}}));
}

TEST(LinalgProperty, RankNullity) {
  std::mt19937 rng(7);
  for (Scalar p : {2u, 3u, 5u})
    for (int t = 0; t < 60; ++t) {
      std::size_t r = rng() % 6 + 1, c = rng() % 6 + 1;
      auto m = oracle::random_matrix(p, r, c, rng);
      auto ns = nullspace_basis(m);
      EXPECT_EQ(rank(m) + ns.size(), c);
      for (const auto& v : ns) EXPECT_TRUE(oracle::is_zero(m.apply(v)));
    }
}

TEST(LinalgProperty, SolveMatchesAugmentedRank) {
  std::mt19937 rng(11);
  for (int t = 0; t < 100; ++t) {
    Scalar p = (t % 2) ? 3 : 2;
    std::size_t r = rng() % 5 + 1, c = rng() % 5 + 1;
    auto a = oracle::random_matrix(p, r, c, rng);
    auto b = oracle::random_matrix(p, r, 1, rng);
    auto s = solve(a, b);
    bool consistent = rank(FpMatrix::hstack({a, b})) == rank(a);
    EXPECT_EQ(s.has_value(), consistent);
    if (s) EXPECT_EQ(a * s->particular, b);
  }
}

TEST(LinalgProperty, InverseRoundTrip) {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    auto m = oracle::random_invertible(3, rng() % 5 + 1, rng);
    auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_TRUE((m * *inv).is_identity());
  }
  EXPECT_FALSE(inverse(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})));
}

TEST(Subspace, CoordinatesAndComplement) {
  Subspace s(2, 3, {{1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains({1, 0, 1}));
  EXPECT_FALSE(s.contains({1, 0, 0}));
  auto c = s.coordinates({1, 0, 1});
  ASSERT_TRUE(c);
  EXPECT_EQ(linear_combination(2, s.basis(), *c, 3), (Vec{1, 0, 1}));
  EXPECT_EQ(s.complement_positions().size(), 1u);
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix::from_rows({{2}}, 1)).invariant_factors(), (std::vector<BigInt>{2}));
  auto d = smith_normal_form(IntMatrix::from_rows({{6, 0}, {0, 4}}, 2));
  EXPECT_EQ(d.invariant_factors(), (std::vector<BigInt>{2, 12}));
  EXPECT_TRUE(smith_normal_form(IntMatrix(0, 0)).diagonal.empty());
}

TEST(Smith, Diag64AgreesWithBruteForceGroup) {
  auto q = oracle::quotient_group({{6, 0}, {0, 4}}, 2);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (std::vector<long long>{2, 12}));
}

TEST(SmithProperty, TransformsAreUnimodularAndDiagonalise) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-6, 6);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = rng() % 4 + 1, c = rng() % 4 + 1;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = e(rng);
    auto s = smith_normal_form(m);
    IntMatrix prod = s.u * m * s.v;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(prod.at(i, j), i == j ? s.diagonal[i] : BigInt(0));
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    for (std::size_t i = 0; i + 1 < s.rank; ++i) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    // invariance under unimodular change
    auto s2 = smith_normal_form(random_unimodular(r, rng) * m * random_unimodular(c, rng));
    EXPECT_EQ(s.invariant_factors(), s2.invariant_factors());
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel_presentation(IntMatrix(0, 2), 2).to_string(), "Z^2");
  EXPECT_EQ(cokernel_presentation(IntMatrix::from_rows({{2}}, 1), 1).to_string(), "Z/2");
  auto rel = IntMatrix::from_rows({{2, -1, 0}, {1, 1, -1}, {1, 0, 1}, {0, 2, 0}}, 3);
  EXPECT_EQ(cokernel_presentation(rel, 3).to_string(), "Z/4");
  auto brute = oracle::quotient_group({{2, -1, 0}, {1, 1, -1}, {1, 0, 1}, {0, 2, 0}}, 3);
  ASSERT_TRUE(brute);
  EXPECT_EQ(*brute, (std::vector<long long>{4}));
}

TEST(CokernelProperty, AgreesWithEnumeration) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> e(-4, 4);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = rng() % 3 + 1, k = n + rng() % 2;
    std::vector<std::vector<long long>> rows(k, std::vector<long long>(n));
    IntMatrix m(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j] = e(rng);
    auto g = cokernel_presentation(m, n);
    auto brute = oracle::quotient_group(rows, n);
    if (!brute) continue;
    ++checked;
    EXPECT_EQ(g.free_rank, 0u);
    std::vector<long long> mine;
    for (const auto& d : g.torsion) mine.push_back(static_cast<long long>(d));
    EXPECT_EQ(mine, *brute);
  }
  EXPECT_GT(checked, 50);
}

TEST(Lattice, SolveAndKernel) {
  auto lat = IntMatrix::from_rows({{2, 0}, {0, 3}}, 2);
  auto w = lattice_solve(lat, {4, 9});
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[0], 2);
  EXPECT_EQ((*w)[1], 3);
  EXPECT_FALSE(lattice_solve(lat, {1, 0}));
  auto ker = integer_left_kernel(IntMatrix::from_rows({{1, 2}, {2, 4}, {0, 1}}, 2));
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0][0] * 1 + ker[0][1] * 2, 0);
  EXPECT_EQ(ker[0][0] * 2 + ker[0][1] * 4 + ker[0][2], 0);
}
