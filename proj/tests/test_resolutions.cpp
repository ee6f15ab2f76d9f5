#include <gtest/gtest.h>

#include "dpd/fixtures.hpp"
#include "dpd/dingdim.hpp"

using namespace dpd;
using namespace dpd::fixtures;

namespace {
Representation k1() { return simple_module(fix1(), 0); }
Representation a1() { return indecomposable_projective(fix1(), 0); }
bool iso(const Representation& m, const Representation& n) { return is_isomorphic(m, n).has_value(); }
}  // namespace

TEST(MinimalResolution, ProjectiveStopsAtZero) {
  auto p = indecomposable_projective(fix3(), 0);
  auto r = minimal_projective_resolution(p, 3);
  EXPECT_TRUE(iso(r.term(0), p));
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(r.term(n).is_zero());
}

TEST(MinimalResolution, KOverFix1IsPeriodic) {
  auto r = minimal_projective_resolution(k1(), 4);
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(iso(r.term(n), a1())) << n;
  for (int n = 1; n <= 4; ++n) {
    auto d = r.differential(n);
    EXPECT_EQ(rank(d.at(0)), 1u);
    EXPECT_TRUE(lands_in_radical(d));
  }
}

TEST(MinimalResolution, S1OverFix2Terminates) {
  auto r = minimal_projective_resolution(simple_module(fix2(), 0), 3);
  EXPECT_TRUE(iso(r.term(0), indecomposable_projective(fix2(), 0)));
  EXPECT_TRUE(iso(r.term(1), indecomposable_projective(fix2(), 1)));
  EXPECT_TRUE(r.term(2).is_zero());
}

TEST(DgResolution, StalkReducesToMinimal) {
  auto m = simple_module(fix3(), 1);
  auto a = dg_projective_resolution(stalk(m, 0), 4);
  auto b = minimal_projective_resolution(m, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_TRUE(iso(a.term(n), b.term(n)));
}

TEST(DgResolution, ProjectiveComplexPassesThrough) {
  auto r = dg_projective_resolution(xfix2(), 4);
  EXPECT_TRUE(r.passthrough());
  auto c = r.complex(4).trimmed();
  EXPECT_EQ(c.lo(), 0);
  EXPECT_EQ(c.hi(), 1);
  EXPECT_TRUE(iso(c.term(0), xfix2().term(0)));
  EXPECT_TRUE(iso(c.term(1), xfix2().term(1)));
}

TEST(DgResolution, TwoHomologyDegrees) {
  auto x = direct_sum(stalk(k1(), 0), stalk(k1(), 1));
  auto r = dg_projective_resolution(x, 6);
  EXPECT_TRUE(is_quasi_iso_through(r.augmentation_map(6), 5));
  for (int n = r.lowest(); n <= 6; ++n) EXPECT_TRUE(is_projective(r.term(n)));
}

TEST(DgResolution, StartsAtHinf) {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    auto x = random_nonexact_complex(t % 2 ? fix3() : fix4(), rng);
    auto r = ResolutionTail::of_complex(x);
    const int hinf = static_cast<int>(homology_profile(x).hinf.value);
    if (!r.passthrough()) {
      for (int n = r.lowest(); n < hinf; ++n) EXPECT_TRUE(r.term(n).is_zero()) << n;
      EXPECT_FALSE(r.term(hinf).is_zero());
    }
    r.extend_to(x.hi() + 3);
    EXPECT_TRUE(is_quasi_iso_through(r.augmentation_map(x.hi() + 3), x.hi() + 2));
  }
}

TEST(Splice, KOverFix1IsPeriodic) {
  CompleteResolution t(k1());
  auto w = t.window(-5, 5);
  for (int n = -5; n <= 5; ++n) EXPECT_TRUE(iso(w.term(n), a1())) << n;
  for (int n = -4; n <= 5; ++n) EXPECT_EQ(rank(w.differential(n).at(0)), 1u) << n;
  EXPECT_TRUE(check_totally_acyclic(t, 8).pass());
}

TEST(Splice, ProjectiveIsContractible) {
  auto p = indecomposable_projective(fix2(), 0);
  CompleteResolution t(p);
  auto w = t.window(-3, 3);
  EXPECT_TRUE(is_exact(w));
  std::size_t total = 0;
  for (int n = -3; n <= 3; ++n) total += w.term(n).total_dim();
  EXPECT_EQ(total, 2 * p.total_dim());
}

TEST(Splice, NotDingProjectiveRejected) {
  EXPECT_THROW(splice_complete_resolution(simple_module(fix3(), 1), 20), NotDingProjective);
}

TEST(TotalAcyclicity, ContractibleDisk) {
  auto d = ChainComplex(fix1(), 0, {a1(), a1()}, {ModuleMap::identity(a1())});
  EXPECT_TRUE(check_totally_acyclic(d, -2, 3).pass());
}

TEST(TotalAcyclicity, TruncatedResolutionFailsExactness) {
  auto r = minimal_projective_resolution(simple_module(fix3(), 1), 8).complex(8);
  auto rep = check_totally_acyclic(r, -4, 6);
  auto f = rep.first_failure();
  ASSERT_TRUE(f);
  bool exact_fail = false;
  for (const auto& c : rep.checks)
    if (c.kind == "exact" && !c.pass) {
      exact_fail = true;
      EXPECT_EQ(c.degree, 0);
    }
  EXPECT_TRUE(exact_fail);
}

TEST(Lifting, IdentityExtendsUpToHomotopy) {
  CompleteResolution cr(k1());
  auto tw = cr.window(-4, 4);
  std::map<int, ModuleMap> id;
  for (int i = 0; i <= 4; ++i) id.emplace(i, ModuleMap::identity(tw.term(i)));
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    auto e = lift_chain_map(tw, tw, 0, id, seed);
    EXPECT_TRUE(e.commutes());
    auto h = homotopy_between(e, ChainMap::identity(tw), 0, true);
    ASSERT_TRUE(h);
    EXPECT_TRUE(h->verify());
  }
}

TEST(Lifting, ZeroBaseExtendsByZeroCanonically) {
  CompleteResolution cr(k1());
  auto tw = cr.window(-4, 4);
  auto e = lift_chain_map(tw, tw, 0, {});
  EXPECT_TRUE(e.commutes());
  for (int i = -4; i <= 4; ++i) EXPECT_TRUE(e.at(i).is_zero());
}

TEST(Lifting, IntoStalkBelowThreshold) {
  CompleteResolution cr(k1());
  auto tw = cr.window(-4, 4);
  auto q = stalk(a1(), -2);
  auto f = lift_chain_map(tw, q, 0, {});
  auto g = lift_chain_map(tw, q, 0, {}, 5);
  EXPECT_TRUE(f.commutes());
  EXPECT_TRUE(g.commutes());
  EXPECT_TRUE(compose(g.at(-2), tw.differential(-1)).is_zero());
  auto h = homotopy_between(f, g, 0, true);
  ASSERT_TRUE(h);
  EXPECT_TRUE(h->verify());
}

TEST(Surjectivize, Xfix2) {
  auto p = std::make_shared<ResolutionTail>(ResolutionTail::of_complex(xfix2()));
  auto fc = build_f_complete(p, 1, 2, 4);
  EXPECT_TRUE(fc.tau.commutes());
  EXPECT_TRUE(fc.bijective_from(1));
  auto s = surjectivize(fc, 1);
  EXPECT_TRUE(s.f.tau.commutes());
  EXPECT_TRUE(s.alpha.commutes());
  EXPECT_TRUE(s.f.surjective());
  for (int i = fc.t.lo(); i <= fc.t.hi(); ++i) EXPECT_EQ(compose(s.f.tau, s.alpha).at(i), fc.tau.at(i)) << i;
  for (int i = 1; i <= fc.t.hi(); ++i) EXPECT_EQ(s.alpha.at(i), ModuleMap::identity(fc.t.term(i))) << i;
  EXPECT_THROW(surjectivize(fc, fc.t.lo()), ThresholdViolated);
}

TEST(Surjectivize, ThresholdAboveSupportLeavesTopUnchanged) {
  auto p = std::make_shared<ResolutionTail>(ResolutionTail::of_complex(xfix2()));
  auto fc = build_f_complete(p, 1, 2, 4);
  auto s = surjectivize(fc, 3);
  for (int i = 3; i <= fc.t.hi(); ++i) EXPECT_TRUE(iso(s.f.t.term(i), fc.t.term(i)));
}
