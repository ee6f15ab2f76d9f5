#include <gtest/gtest.h>

#include "dpd/fixtures.hpp"
#include "dpd/oracle.hpp"

using namespace dpd;
using namespace dpd::fixtures;

namespace {
Representation k1() { return simple_module(fix1(), 0); }
Representation a1() { return indecomposable_projective(fix1(), 0); }
bool iso(const Representation& m, const Representation& n) { return is_isomorphic(m, n).has_value(); }
}  // namespace

TEST(Modules, RelationsEnforced) {
  // x acting by 1 violates x^2 = 0.
  EXPECT_THROW(Representation(fix1(), {1}, {FpMatrix::from_rows(2, {{1}})}), InvalidModule);
}

TEST(Hom, SimplesOfFix2) { EXPECT_EQ(HomSpace(simple_module(fix2(), 0), simple_module(fix2(), 1)).dim(), 0u); }

TEST(Hom, RegularModuleAdjunction) {
  Rng rng(3);
  for (const auto& [name, alg] : all_algebras()) {
    auto a = direct_sum(indecomposable_projectives(alg), alg);
    for (int t = 0; t < 5; ++t) {
      auto m = random_module(alg, rng);
      EXPECT_EQ(HomSpace(a, m).dim(), m.total_dim()) << name;
    }
  }
}

TEST(Hom, S2IntoP1OverFix3) {
  EXPECT_EQ(HomSpace(simple_module(fix3(), 1), indecomposable_projective(fix3(), 0)).dim(), 1u);
}

TEST(KernelCokernel, IdentityAndZero) {
  auto m = a1();
  auto id = kernel_cokernel(ModuleMap::identity(m));
  EXPECT_TRUE(id.ker.module.is_zero());
  EXPECT_TRUE(id.coker.module.is_zero());
  auto z = kernel_cokernel(ModuleMap::zero(m, k1()));
  EXPECT_TRUE(iso(z.ker.module, m));
  EXPECT_TRUE(iso(z.coker.module, k1()));
}

TEST(KernelCokernel, MultiplicationByA) {
  auto f = right_multiplication(fix1(), fix1()->arrow_element(0));
  auto kc = kernel_cokernel(f);
  EXPECT_TRUE(iso(kc.ker.module, k1()));
  EXPECT_TRUE(iso(kc.coker.module, k1()));
}

TEST(Iso, Basic) {
  auto m = a1();
  EXPECT_TRUE(iso(m, m));
  EXPECT_TRUE(iso(direct_sum(k1(), k1()), Representation(fix1(), {2}, {FpMatrix(2, 2, 2)})));
  EXPECT_FALSE(iso(indecomposable_projective(fix2(), 0), indecomposable_projective(fix2(), 1)));
  EXPECT_FALSE(iso(a1(), direct_sum(k1(), k1())));
}

TEST(Iso, WitnessIsInvertibleHom) {
  auto w = is_isomorphic(syzygy(simple_module(fix3(), 1)), simple_module(fix3(), 1));
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->commutes());
  EXPECT_TRUE(w->is_iso());
}

TEST(Cover, ProjectiveIsOwnCover) {
  auto p = indecomposable_projective(fix3(), 0);
  auto c = top_and_cover(p);
  EXPECT_TRUE(c.map.is_iso());
}

TEST(Cover, SimpleOverFix1) {
  auto c = top_and_cover(k1());
  EXPECT_EQ(c.free.rank(), 1u);
  EXPECT_EQ(kernel(c.map).module.total_dim(), 1u);
}

TEST(Cover, ZeroModule) {
  auto c = top_and_cover(Representation::zero(fix1()));
  EXPECT_EQ(c.free.rank(), 0u);
}

TEST(Syzygy, Examples) {
  EXPECT_TRUE(iso(syzygy(k1()), k1()));
  EXPECT_TRUE(iso(syzygy(simple_module(fix2(), 0)), indecomposable_projective(fix2(), 1)));
  EXPECT_TRUE(iso(syzygy(simple_module(fix3(), 1)), simple_module(fix3(), 1)));
  EXPECT_TRUE(syzygy(a1()).is_zero());
}

TEST(Syzygy, TwoStepsAgreeWithResolution) {
  Rng rng(11);
  for (const auto& [name, alg] : all_algebras())
    for (int t = 0; t < 5; ++t) {
      auto m = random_module(alg, rng);
      MinimalResolution r(m);
      EXPECT_TRUE(iso(syzygy(syzygy(m)), r.syzygy(2))) << name;
    }
}

TEST(Dual, ProjectivesAndSimples) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto d = dual_star(indecomposable_projective(alg, v));
      EXPECT_TRUE(iso(d.module, indecomposable_projective(alg->opposite(), v))) << name;
      auto dd = dual_star(d.module);
      EXPECT_TRUE(double_dual_map(indecomposable_projective(alg, v), d, dd).is_iso()) << name;
    }
  EXPECT_TRUE(iso(dual_star(k1()).module, simple_module(fix1()->opposite(), 0)));
  EXPECT_EQ(dual_star(simple_module(fix3(), 1)).module.total_dim(), 2u);
}

TEST(Ext, ProjectiveSourceVanishes) {
  Rng rng(5);
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto n = random_module(alg, rng);
      for (int i = 1; i <= 3; ++i) EXPECT_EQ(ext_group(indecomposable_projective(alg, v), n, i).dim, 0u) << name;
    }
}

TEST(Ext, Examples) {
  EXPECT_EQ(ext_group(k1(), k1(), 1).dim, 1u);
  auto a3 = direct_sum(indecomposable_projectives(fix3()), fix3());
  auto e = ext_group(simple_module(fix3(), 1), a3, 1);
  EXPECT_EQ(e.dim, 1u);
  EXPECT_EQ(e.recompute(), 1u);
  EXPECT_EQ(ext_group(k1(), k1(), 0).dim, HomSpace(k1(), k1()).dim());
}

TEST(Ext, OracleAgreesOnFixtures) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v)
      for (int w = 0; w < alg->vertices(); ++w) {
        auto m = simple_module(alg, v);
        auto n = indecomposable_projective(alg, w);
        auto dims = oracle::ext_dims(m, n, 4);
        for (int i = 0; i <= 4; ++i) EXPECT_EQ(ext_group(m, n, i).dim, dims[i]) << name << " i=" << i;
      }
}

TEST(Projective, Examples) {
  EXPECT_TRUE(is_projective(direct_sum(indecomposable_projectives(fix2()), fix2())));
  EXPECT_FALSE(is_projective(k1()));
  EXPECT_TRUE(is_projective(Representation::zero(fix1())));
}
