#include <gtest/gtest.h>

#include "dpd/fixtures.hpp"

using namespace dpd;
using namespace dpd::fixtures;

TEST(Algebra, Fix1IsDualNumbers) {
  auto a = fix1();
  EXPECT_EQ(a->dim(), 2u);
  EXPECT_EQ(a->nilpotency_index(), 2);
  EXPECT_TRUE(a->is_commutative());
}

TEST(Algebra, Fix2PathAlgebraOfA2) {
  auto a = fix2();
  EXPECT_EQ(a->dim(), 3u);
  EXPECT_EQ(a->between(0, 1).size(), 1u);
  EXPECT_EQ(a->between(1, 0).size(), 0u);
}

TEST(Algebra, Fix3AndFix4Dims) {
  EXPECT_EQ(fix3()->dim(), 4u);
  EXPECT_EQ(fix4()->dim(), 4u);
  EXPECT_EQ(honesty()->dim(), 3u);
  EXPECT_TRUE(fix4()->is_commutative());
}

TEST(Algebra, FreeLoopIsInfinite) {
  EXPECT_THROW(build_algebra({1, {{"a", 0, 0}}}, {}, 2, 16), NotFiniteDimensional);
}

TEST(Algebra, ShortRelationRejected) {
  EXPECT_THROW(build_algebra({1, {{"a", 0, 0}}}, {{{1, {0}}}}, 2, 16), NotAdmissible);
}

TEST(Algebra, NonParallelRelationRejected) {
  EXPECT_THROW(build_algebra({3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 1}, {"d", 1, 1}}},
                             {{{1, {0, 1}}, {1, {2, 3}}}}, 2, 16),
               NotAdmissible);
}

TEST(Algebra, Associative) {
  for (const auto& [name, a] : all_algebras()) EXPECT_TRUE(a->check_associative()) << name;
  EXPECT_TRUE(honesty()->check_associative());
}

TEST(Opposite, CommutativeIsSelfOpposite) {
  auto a = fix1();
  EXPECT_TRUE(a->opposite()->same_presentation(*a));
  EXPECT_EQ(a->opposite()->opposite(), a);
}

TEST(Opposite, Fix2ArrowReversed) {
  const auto& arr = fix2()->opposite()->quiver().arrows.at(0);
  EXPECT_EQ(arr.source, 1);
  EXPECT_EQ(arr.target, 0);
}

TEST(Opposite, Fix3RelationsReversed) {
  auto op = fix3()->opposite();
  EXPECT_EQ(op->dim(), 4u);
  const auto& rels = op->relations();
  ASSERT_EQ(rels.size(), 2u);
  // ba = 0 read as "a then b" becomes "b then a" in the opposite.
  EXPECT_EQ(rels[0].at(0).path, (Path{1, 0}));
  EXPECT_EQ(rels[1].at(0).path, (Path{1, 1}));
}

TEST(Projectives, DimensionVectors) {
  EXPECT_EQ(indecomposable_projective(fix1(), 0).dims(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(indecomposable_projective(fix2(), 0).dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(indecomposable_projective(fix2(), 1).dims(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(indecomposable_projective(fix3(), 0).dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(indecomposable_projective(fix3(), 1).dims(), (std::vector<std::size_t>{0, 2}));
}

TEST(Algebra, OverF3) {
  auto a = build_algebra({1, {{"x", 0, 0}}}, {{{1, {0, 0, 0}}}}, 3, 16);
  EXPECT_EQ(a->dim(), 3u);
  EXPECT_EQ(a->nilpotency_index(), 3);
}
