#include <gtest/gtest.h>

#include "dpd/fixtures.hpp"
#include "dpd/resolutions.hpp"

using namespace dpd;
using namespace dpd::fixtures;

namespace {
Representation k1() { return simple_module(fix1(), 0); }
Representation a1() { return indecomposable_projective(fix1(), 0); }
bool iso(const Representation& m, const Representation& n) { return is_isomorphic(m, n).has_value(); }
bool same_complex(const ChainComplex& x, const ChainComplex& y) {
  if (x.lo() != y.lo() || x.hi() != y.hi()) return false;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (!(x.term(n) == y.term(n))) return false;
    if (n > x.lo() && !(x.differential(n) == y.differential(n))) return false;
  }
  return true;
}
}  // namespace

TEST(Complex, Construction) {
  EXPECT_NO_THROW(stalk(k1(), 0));
  auto x = xfix2();
  EXPECT_EQ(x.lo(), 0);
  EXPECT_EQ(x.hi(), 1);
  auto id = ModuleMap::identity(a1());
  EXPECT_THROW(build_complex(fix1(), 0, {a1(), a1(), a1()}, {id, id}), NotAComplex);
}

TEST(Complex, Shift) {
  auto x = xfix2();
  EXPECT_TRUE(same_complex(shift(x, 0), x));
  EXPECT_TRUE(same_complex(shift(stalk(k1(), 0), 3), stalk(k1(), 3)));
  auto s = shift(x, 1);
  EXPECT_EQ(s.lo(), 1);
  EXPECT_EQ(s.hi(), 2);
  EXPECT_EQ(s.differential(2), x.differential(1));  // -1 = 1 over F_2
}

TEST(Complex, ShiftSignOverF3) {
  auto alg = build_algebra({1, {{"x", 0, 0}}}, {{{1, {0, 0}}}}, 3, 16);
  auto p = indecomposable_projective(alg, 0);
  auto d = right_multiplication(alg, alg->arrow_element(0));
  ChainComplex c(alg, 0, {p, p}, {d});
  EXPECT_EQ(shift(c, 1).differential(2), d.negated());
  EXPECT_EQ(shift(c, 2).differential(3), d);
}

TEST(Complex, Stalk) {
  EXPECT_TRUE(stalk(Representation::zero(fix1()), 4).is_zero());
  auto s = stalk(k1(), 2);
  EXPECT_TRUE(iso(homology(s, 2), k1()));
  EXPECT_TRUE(homology(s, 1).is_zero());
  EXPECT_EQ(stalk(k1(), 0).trimmed().lo(), 0);
  EXPECT_EQ(stalk(k1(), 0).trimmed().hi(), 0);
}

TEST(Complex, Truncations) {
  EXPECT_TRUE(hard_below(stalk(k1(), 0), 1).is_zero());
  auto t = soft_above(xfix2(), 0);
  EXPECT_EQ(t.trimmed().lo(), 0);
  EXPECT_EQ(t.trimmed().hi(), 0);
  EXPECT_TRUE(iso(t.term(0), simple_module(fix2(), 0)));
  EXPECT_TRUE(iso(cokernel_at(stalk(k1(), 0), 0).module, k1()));
  EXPECT_TRUE(iso(cokernel_at(xfix2(), 1).module, indecomposable_projective(fix2(), 1)));
}

TEST(Complex, HomologyProfile) {
  auto exact = ChainComplex(fix1(), 0, {a1(), a1()}, {ModuleMap::identity(a1())});
  auto pe = homology_profile(exact);
  EXPECT_TRUE(pe.exact());
  EXPECT_TRUE(pe.hsup.is_neg_inf());
  auto px = homology_profile(xfix2());
  EXPECT_EQ(px.hsup, ExtInt::of(0));
  EXPECT_EQ(px.hinf, ExtInt::of(0));
  EXPECT_TRUE(iso(homology(xfix2(), 0), simple_module(fix2(), 0)));
  EXPECT_TRUE(homology(xfix2(), 1).is_zero());
  auto ps = homology_profile(stalk(k1(), 5));
  EXPECT_EQ(ps.hsup, ExtInt::of(5));
  EXPECT_EQ(ps.hinf, ExtInt::of(5));
}

TEST(Cone, OfZeroMapIsShift) {
  auto x = xfix2();
  auto c = mapping_cone(ChainMap::zero(x, ChainComplex::zero(fix2()))).trimmed();
  auto s = shift(x, 1);
  ASSERT_EQ(c.lo(), s.lo());
  ASSERT_EQ(c.hi(), s.hi());
  for (int n = c.lo(); n <= c.hi(); ++n) EXPECT_TRUE(iso(c.term(n), s.term(n)));
  EXPECT_TRUE(is_exact(mapping_cone(ChainMap::identity(x))));
}

TEST(Cone, OfResolutionAugmentationIsExact) {
  auto r = minimal_projective_resolution(k1(), 6);
  auto aug = r.augmentation_map(6);
  auto c = mapping_cone(aug);
  for (int n = c.lo(); n <= 6; ++n) EXPECT_TRUE(homology(c, n).is_zero()) << n;
}

TEST(HomComplex, Examples) {
  auto h = hom_complex(xfix2(), stalk(indecomposable_projective(fix2(), 1), 0));
  EXPECT_EQ(h.dim(0), 0u);
  EXPECT_EQ(h.dim(-1), 1u);
  auto m = simple_module(fix3(), 1), n = indecomposable_projective(fix3(), 0);
  auto hs = hom_complex(stalk(m, 0), stalk(n, 0));
  EXPECT_EQ(hs.dim(0), HomSpace(m, n).dim());
  EXPECT_EQ(hs.homology_dim(0), HomSpace(m, n).dim());
}

TEST(HomComplex, ResolutionGivesExt) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto m = simple_module(alg, v);
      auto n = direct_sum(indecomposable_projectives(alg), alg);
      auto h = hom_complex(minimal_projective_resolution(m, 6).complex(6), stalk(n, 0));
      for (int i = 0; i <= 4; ++i) EXPECT_EQ(h.homology_dim(-i), ext_group(m, n, i).dim) << name << " i=" << i;
    }
}

TEST(Tensor, Examples) {
  auto a = fix4();
  auto k = simple_module(a, 0);
  auto r = indecomposable_projective(a, 0);
  Rng rng(2);
  auto x = random_complex(a, rng);
  auto t = tensor_complex(stalk(r, 0), x);
  for (int n = x.lo(); n <= x.hi(); ++n) EXPECT_TRUE(iso(t.term(n), x.term(n)));
  auto kk = tensor_complex(stalk(k, 0), stalk(k, 0)).trimmed();
  EXPECT_EQ(kk.lo(), 0);
  EXPECT_TRUE(iso(kk.term(0), k));
  EXPECT_THROW(tensor_complex(xfix2(), xfix2()), NotCommutative);
}

TEST(QuasiIso, Examples) {
  EXPECT_TRUE(is_quasi_iso(ChainMap::identity(xfix2())));
  auto q = cokernel_at(xfix2(), 0);
  EXPECT_TRUE(is_quasi_iso(ChainMap(xfix2(), stalk(q.module, 0), {{0, q.projection}})));
  auto x = stalk(k1(), 0);
  EXPECT_FALSE(is_quasi_iso(ChainMap::zero(x, x)));
}

TEST(ExtInt, Arithmetic) {
  EXPECT_EQ(ExtInt::of(3) + 2, ExtInt::of(5));
  EXPECT_TRUE((ExtInt::neg_inf() + 7).is_neg_inf());
  EXPECT_TRUE((ExtInt::pos_inf() - 7).is_pos_inf());
  EXPECT_EQ(max(ExtInt::neg_inf(), ExtInt::of(-4)), ExtInt::of(-4));
  EXPECT_TRUE(ExtInt::of(100) < ExtInt::pos_inf());
}
