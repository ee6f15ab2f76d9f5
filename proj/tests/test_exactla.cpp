#include <gtest/gtest.h>

#include <random>

#include "dpd/exactla.hpp"

using namespace dpd;

TEST(Rref, IdentityIsFixed) {
  auto id = FpMatrix::identity(2, 3);
  auto r = rref_rank(id);
  EXPECT_EQ(r.rref, id);
  EXPECT_EQ(r.rank, 3u);
}

TEST(Rref, AllOnesHasRankOne) {
  EXPECT_EQ(rank(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})), 1u);
}

TEST(Rref, EmptyRows) {
  FpMatrix m(5, 0, 4);
  auto r = rref_rank(m);
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.rref, m);
}

TEST(KernelImage, Identity) {
  auto ki = kernel_image(FpMatrix::identity(3, 4));
  EXPECT_EQ(ki.kernel.cols(), 0u);
  EXPECT_EQ(ki.image.cols(), 4u);
}

TEST(KernelImage, ZeroOverF3) {
  auto ki = kernel_image(FpMatrix(3, 2, 2));
  EXPECT_EQ(ki.kernel.cols(), 2u);
  EXPECT_EQ(ki.image.cols(), 0u);
}

TEST(KernelImage, AllOnesKernel) {
  auto k = kernel(FpMatrix::from_rows(2, {{1, 1}, {1, 1}}));
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k, FpMatrix::column(2, {1, 1}));
}

TEST(Solve, Identity) {
  auto b = FpMatrix::column(7, {3, 5, 6});
  auto x = solve_linear(FpMatrix::identity(7, 3), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(Solve, InconsistentSystem) {
  EXPECT_FALSE(solve_linear(FpMatrix(2, 2, 2), FpMatrix::column(2, {1, 0})));
}

TEST(Solve, UnderdeterminedSolutionIsOneOfTwo) {
  auto a = FpMatrix::from_rows(2, {{1, 1}, {0, 0}});
  auto x = solve_linear(a, FpMatrix::column(2, {1, 0}));
  ASSERT_TRUE(x);
  EXPECT_TRUE(*x == FpMatrix::column(2, {1, 0}) || *x == FpMatrix::column(2, {0, 1}));
}

TEST(Field, RejectsComposite) {
  EXPECT_FALSE(is_prime(4));
  EXPECT_THROW(check_prime(4), Error);
}

TEST(Field, MixedFieldsRejected) { EXPECT_THROW(FpMatrix(2, 1, 1) * FpMatrix(3, 1, 1), Error); }

TEST(Field, InverseMod) {
  for (Residue p : {2u, 3u, 5u, 101u})
    for (Residue a = 1; a < p; ++a) EXPECT_EQ(mul_mod(a, inv_mod(a, p), p), 1u);
}

class RandomMatrices : public ::testing::TestWithParam<Residue> {};

TEST_P(RandomMatrices, RankNullityAndKernel) {
  const Residue p = GetParam();
  std::mt19937_64 rng(p);
  std::uniform_int_distribution<Residue> d(0, p - 1);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = rng() % 6, c = rng() % 6;
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    auto ki = kernel_image(m);
    EXPECT_EQ(ki.kernel.cols() + ki.image.cols(), c);
    EXPECT_TRUE((m * ki.kernel).is_zero());
    EXPECT_EQ(rank(m), rank(m.transpose()));
    if (r == c) {
      auto inv = inverse(m);
      EXPECT_EQ(inv.has_value(), rank(m) == r);
      if (inv) {
        EXPECT_EQ(m * *inv, FpMatrix::identity(p, r));
      }
    }
    FpMatrix b(p, r, 1);
    for (std::size_t i = 0; i < r; ++i) b(i, 0) = d(rng);
    auto x = solve_linear(m, b);
    EXPECT_EQ(x.has_value(), rank(hstack({m, b}, p, r)) == rank(m));
    if (x) {
      EXPECT_EQ(m * *x, b);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, RandomMatrices, ::testing::Values(2u, 3u, 5u, 7u, 65521u));
