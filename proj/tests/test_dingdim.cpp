#include <gtest/gtest.h>

#include "dpd/dingdim.hpp"
#include "dpd/fixtures.hpp"

using namespace dpd;
using namespace dpd::fixtures;

namespace {
constexpr int kWindow = 20;
Representation k1() { return simple_module(fix1(), 0); }
Representation a1() { return indecomposable_projective(fix1(), 0); }
}  // namespace

TEST(SelfInjective, Fixtures) {
  EXPECT_TRUE(is_self_injective(fix1()));
  EXPECT_FALSE(is_self_injective(fix2()));
  EXPECT_FALSE(is_self_injective(fix3()));
  EXPECT_TRUE(is_self_injective(fix4()));
  EXPECT_FALSE(is_self_injective(honesty()));
}

TEST(IsDingProjective, Projectives) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto r = is_ding_projective(indecomposable_projective(alg, v), kWindow);
      EXPECT_EQ(r.answer, Answer::Yes) << name;
      ASSERT_TRUE(r.certificate);
      EXPECT_TRUE(r.certificate->projective);
    }
}

TEST(IsDingProjective, SimpleOverDualNumbers) {
  auto r = is_ding_projective(k1(), kWindow);
  ASSERT_EQ(r.answer, Answer::Yes);
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(replay(*r.certificate, k1()));
  EXPECT_TRUE(r.certificate->reflexivity.is_iso());
}

TEST(IsDingProjective, SimpleOverDualNumbersViaCycles) {
  // Bypass the self-injective shortcut: check the cycle (0, 1) on the module directly.
  MinimalResolution res(k1());
  EXPECT_TRUE(is_isomorphic(res.syzygy(0), res.syzygy(1)).has_value());
  for (int i = 1; i <= 4; ++i)
    for (const auto& e : ext_into_projectives(res, i)) EXPECT_EQ(e.witness.dim, 0u);
}

TEST(IsDingProjective, S2OverFix3HasExtObstruction) {
  auto r = is_ding_projective(simple_module(fix3(), 1), kWindow);
  ASSERT_EQ(r.answer, Answer::No);
  ASSERT_TRUE(r.obstruction);
  EXPECT_EQ(r.obstruction->kind, Obstruction::Kind::Ext);
  EXPECT_EQ(r.obstruction->degree, 1);
  EXPECT_EQ(r.obstruction->total_dim(), 1u);
  EXPECT_TRUE(replay(*r.obstruction));
}

TEST(IsDingProjective, WindowOneIsUndetermined) {
  EXPECT_EQ(is_ding_projective(k1(), 1).answer, Answer::Undetermined);
  EXPECT_EQ(is_ding_projective(a1(), 1).answer, Answer::Yes);
}

TEST(DpdModule, Fixtures) {
  EXPECT_TRUE(dpd_module(Representation::zero(fix1()), kWindow).value.is_neg_inf());
  EXPECT_EQ(dpd_module(k1(), kWindow).value, ExtInt::of(0));
  EXPECT_EQ(dpd_module(simple_module(fix2(), 0), kWindow).value, ExtInt::of(1));
  auto s2 = simple_module(fix3(), 1);
  auto v = dpd_module(s2, kWindow);
  EXPECT_TRUE(v.value.is_pos_inf());
  EXPECT_FALSE(v.undetermined);
  ASSERT_TRUE(v.infinity_cycle);
  EXPECT_TRUE(replay_verdict(v, s2));
}

TEST(DpdModule, CertificatesReplay) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto m = simple_module(alg, v);
      auto d = dpd_module(m, kWindow);
      EXPECT_TRUE(replay_verdict(d, m)) << name << " S_" << v;
    }
}

TEST(DpdComplex, Fixtures) {
  EXPECT_TRUE(dpd_complex(ChainComplex::zero(fix2()), kWindow).value.is_neg_inf());
  auto v = dpd_complex(xfix2(), kWindow);
  EXPECT_EQ(v.value, ExtInt::of(1));
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(verify_witness(v, xfix2(), kWindow));
  EXPECT_EQ(dpd_complex(shift(xfix2(), 3), kWindow).value, ExtInt::of(4));
  EXPECT_TRUE(dpd_complex(stalk(simple_module(fix3(), 1), 0), kWindow).value.is_pos_inf());
}

TEST(DpdComplex, StalkMatchesModule) {
  for (const auto& [name, alg] : all_algebras())
    for (int v = 0; v < alg->vertices(); ++v) {
      auto m = simple_module(alg, v);
      EXPECT_TRUE(dpd_complex(stalk(m, 0), kWindow).same_value(dpd_module(m, kWindow))) << name;
    }
}

TEST(DpdFunctorial, Fixtures) {
  EXPECT_EQ(dpd_functorial(xfix2(), kWindow), ExtInt::of(1));
  EXPECT_EQ(dpd_functorial(stalk(k1(), 0), kWindow), ExtInt::of(0));
  EXPECT_THROW(dpd_functorial(stalk(simple_module(fix3(), 1), 0), kWindow), FailedHypothesis);
}

TEST(Rhom, SelfInjectiveFix1) {
  auto h = rhom(stalk(k1(), 0), stalk(a1(), 0), -4, 0);
  EXPECT_EQ(h.at(0), 1u);
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(h.at(-m), 0u);
}

TEST(Rhom, ExactSourceGivesZero) {
  auto d = ChainComplex(fix1(), 0, {a1(), a1()}, {ModuleMap::identity(a1())});
  for (auto [l, dim] : rhom(d, stalk(k1(), 0), -3, 3)) EXPECT_EQ(dim, 0u) << l;
}

TEST(Rhom, ExtBridgeOnXfix2) {
  auto v = dpd_complex(xfix2(), kWindow);
  ASSERT_TRUE(v.witness);
  auto c0 = cokernel_at(*v.witness, 0).module;
  auto p2 = indecomposable_projective(fix2(), 1);
  EXPECT_EQ(ext_group(c0, p2, 1).dim, 1u);
  EXPECT_EQ(rhom(xfix2(), stalk(p2, 0), -1, -1).at(-1), 1u);
}

TEST(ProjectiveDimension, Fixtures) {
  EXPECT_EQ(projective_dimension(simple_module(fix2(), 0), kWindow), ExtInt::of(1));
  EXPECT_EQ(projective_dimension(xfix2(), kWindow), ExtInt::of(1));
  EXPECT_FALSE(projective_dimension(k1(), kWindow).has_value());
}

TEST(Honesty, UndeterminedWithGrowingBound) {
  auto k = simple_module(honesty(), 0);
  long prev = -1;
  for (int w : {4, 6, 8}) {
    auto v = dpd_module(k, w);
    EXPECT_TRUE(v.undetermined) << w;
    EXPECT_GT(v.lower_bound, prev);
    prev = v.lower_bound;
  }
  EXPECT_GE(prev, 4);
}

TEST(Replay, TamperedCertificateFails) {
  auto s2 = simple_module(fix3(), 1);
  auto v = dpd_module(s2, kWindow);
  ASSERT_TRUE(v.infinity_cycle);
  v.infinity_cycle->k += 1;
  EXPECT_FALSE(replay_verdict(v, s2));
}
