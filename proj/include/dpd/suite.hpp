#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dpd/dingdim.hpp"
#include "dpd/fixtures.hpp"
#include "dpd/io.hpp"
#include "dpd/oracle.hpp"

namespace dpd::suite {

using fixtures::Rng;
using io::json;

struct Config {
  std::uint64_t seed = 0;
  int window = 20;
  int samples = 50;        // per identity
  int ext_triples = 100;   // module-level Ext oracle
  int sequences = 20;      // two-of-three
  int perfect = 20;        // change of rings
  int ta_window = 8;
};

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

struct PropertyResult {
  std::string name;
  Status status = Status::Pass;
  int instances = 0;
  std::string detail;
  json reproducer;  // null unless failed

  json to_json() const {
    json j = {{"name", name}, {"status", to_string(status)}, {"instances", instances}};
    if (!detail.empty()) j["detail"] = detail;
    if (status == Status::Fail) j["reproducer"] = reproducer;
    return j;
  }
};

/// Collects instance outcomes; keeps the smallest failing instance as reproducer.
class Tally {
 public:
  Tally(std::string name, const Config& cfg) : name_(std::move(name)), cfg_(cfg) {}

  void pass() { ++instances_; }

  void fail(const std::string& what, json input, std::size_t size, int instance) {
    ++instances_;
    ++failures_;
    if (!rep_.is_null() && size >= best_size_) return;
    best_size_ = size;
    rep_ = {{"property", name_}, {"seed", cfg_.seed}, {"window", cfg_.window}, {"instance", instance},
            {"failure", what}, {"input", std::move(input)}};
  }

  void check(bool ok, const std::string& what, const std::function<json()>& input, std::size_t size, int instance) {
    if (ok)
      pass();
    else
      fail(what, input(), size, instance);
  }

  int instances() const { return instances_; }
  int failures() const { return failures_; }

  PropertyResult result(std::string detail = {}, int required = 0) const {
    PropertyResult r{name_, Status::Pass, instances_, std::move(detail), nullptr};
    if (failures_ > 0) {
      r.status = Status::Fail;
      r.reproducer = rep_;
      r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(failures_) + " failing instance(s)";
    } else if (instances_ < required) {
      r.status = Status::Fail;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("only ") + std::to_string(instances_) + " of " +
                  std::to_string(required) + " required instances";
      r.reproducer = {{"property", name_}, {"seed", cfg_.seed}, {"window", cfg_.window}};
    }
    return r;
  }

 private:
  std::string name_;
  Config cfg_;
  int instances_ = 0, failures_ = 0;
  std::size_t best_size_ = 0;
  json rep_;
};

inline PropertyResult skipped(const std::string& name, const std::string& why) {
  return {name, Status::Skipped, 0, why, nullptr};
}

inline Rng rng_for(const Config& cfg, std::uint64_t salt) {
  return Rng(cfg.seed * 0x9E3779B97F4A7C15ULL + salt * 0xBF58476D1CE4E5B9ULL + 1);
}

inline std::size_t size_of(const ChainComplex& c) {
  std::size_t s = 0;
  for (int n = c.lo(); n <= c.hi(); ++n) s += c.term(n).total_dim();
  return s;
}

inline json doc(const std::string& alg, const ChainComplex& c) {
  return {{"algebra", alg}, {"complex", io::complex_to_json(c)}};
}
inline json doc(const std::string& alg, const Representation& m) {
  return {{"algebra", alg}, {"module", io::module_to_json(m)}};
}

inline bool finite(const DpdVerdict& v) { return !v.undetermined && v.value.is_finite(); }
/// Not +inf and not undetermined: the sense of "finite dimension" used for exact complexes too.
inline bool bounded(const DpdVerdict& v) { return !v.undetermined && !v.value.is_pos_inf(); }

// ---------------------------------------------------------------------------
// Fixture verdicts

inline PropertyResult fixture_verdicts(const Config& cfg) {
  const std::string name = "fixture verdicts";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  using namespace fixtures;
  Tally t(name, cfg);
  const int w = cfg.window;
  auto k1 = simple_module(fix1(), 0);
  auto v1 = dpd_module(k1, w);
  t.check(v1.to_string() == "0" && replay_verdict(v1, k1), "dpd(k) over FIX1 is " + v1.to_string(),
          [&] { return doc("FIX1", k1); }, 1, 0);
  auto s1 = simple_module(fix2(), 0);
  auto v2 = dpd_module(s1, w);
  t.check(v2.to_string() == "1" && replay_verdict(v2, s1), "dpd(S_1) over FIX2 is " + v2.to_string(),
          [&] { return doc("FIX2", s1); }, 1, 1);
  auto s2 = simple_module(fix3(), 1);
  auto v3 = dpd_module(s2, w);
  t.check(v3.to_string() == "+inf" && v3.infinity_cycle && replay_verdict(v3, s2),
          "dpd(S_2) over FIX3 is " + v3.to_string() + " or its cycle does not replay", [&] { return doc("FIX3", s2); },
          1, 2);
  auto x = xfix2();
  auto v4 = dpd_complex(x, w);
  t.check(v4.to_string() == "1" && verify_witness(v4, x, w), "dpd(XFIX2) is " + v4.to_string(),
          [&] { return doc("FIX2", x); }, 2, 3);
  auto z = ChainComplex::zero(fix2());
  auto v5 = dpd_complex(z, w);
  t.check(v5.to_string() == "-inf", "dpd(0) is " + v5.to_string(), [&] { return doc("FIX2", z); }, 0, 4);
  return t.result();
}

// ---------------------------------------------------------------------------
// Random complex streams

inline std::vector<fixtures::NamedAlgebra> pick(const std::vector<std::string>& names) {
  std::vector<fixtures::NamedAlgebra> out;
  for (auto& a : fixtures::all_algebras())
    for (const auto& n : names)
      if (a.name == n) out.push_back(a);
  return out;
}

inline PropertyResult functorial_agreement(const Config& cfg) {
  const std::string name = "functorial description agrees with cokernel criterion";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  using namespace fixtures;
  Tally t(name, cfg);
  const int w = cfg.window;
  int idx = 0;
  std::vector<std::pair<std::string, ChainComplex>> fixed = {
      {"FIX1", stalk(simple_module(fix1(), 0), 0)}, {"FIX2", stalk(simple_module(fix2(), 0), 0)},
      {"FIX2", xfix2()},                            {"FIX2", shift(xfix2(), 3)},
      {"FIX4", stalk(simple_module(fix4(), 0), 0)}, {"FIX3", stalk(indecomposable_projective(fix3(), 1), 0)}};
  for (auto& [an, x] : fixed) {
    auto v = dpd_complex(x, w);
    bool ok = finite(v) && dpd_functorial(v) == v.value && verify_witness(v, x, w);
    t.check(ok, "functorial value differs on fixture", [&, &an = an, &x = x] { return doc(an, x); }, size_of(x), idx++);
  }
  // the hypothesis is enforced
  bool threw = false;
  try {
    dpd_functorial(stalk(simple_module(fix3(), 1), 0), w);
  } catch (const FailedHypothesis&) {
    threw = true;
  }
  t.check(threw, "stalk(S_2) over FIX3 did not raise FailedHypothesis",
          [&] { return doc("FIX3", stalk(simple_module(fix3(), 1), 0)); }, 1, idx++);
  Rng rng = rng_for(cfg, 2);
  auto algs = pick({"FIX1", "FIX2", "FIX4"});
  int random_finite = 0;
  for (int attempt = 0; random_finite < cfg.samples && attempt < 4 * cfg.samples; ++attempt) {
    const auto& a = algs[attempt % algs.size()];
    auto x = random_nonexact_complex(a.alg, rng);
    auto v = dpd_complex(x, w);
    if (!finite(v)) continue;
    ++random_finite;
    auto f = dpd_functorial(v);
    t.check(f == v.value, "functorial " + f.to_string() + " vs " + v.to_string(), [&] { return doc(a.name, x); },
            size_of(x), idx++);
  }
  return t.result(std::to_string(random_finite) + " random finite verdicts", cfg.samples + 7);
}

inline PropertyResult shift_identity(const Config& cfg) {
  const std::string name = "shift adds k";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 3);
  auto algs = fixtures::all_algebras();
  for (int i = 0; i < cfg.samples; ++i) {
    const auto& a = algs[i % algs.size()];
    auto x = fixtures::random_complex(a.alg, rng);
    const int k = fixtures::uniform(rng, -3, 3);
    auto v = dpd_complex(x, cfg.window);
    auto s = dpd_complex(shift(x, k), cfg.window);
    bool ok = v.undetermined ? (s.undetermined && s.lower_bound == v.lower_bound + k)
                             : (!s.undetermined && s.value == v.value + k);
    t.check(ok, "shift by " + std::to_string(k) + ": " + v.to_string() + " -> " + s.to_string(),
            [&] { return doc(a.name, x); }, size_of(x), i);
  }
  return t.result({}, cfg.samples);
}

inline PropertyResult direct_sum_identity(const Config& cfg) {
  const std::string name = "direct sum takes the sup";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 4);
  auto algs = fixtures::all_algebras();
  int mixed = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const auto& a = algs[i % algs.size()];
    auto x = fixtures::random_complex(a.alg, rng), y = fixtures::random_complex(a.alg, rng);
    auto vx = dpd_complex(x, cfg.window), vy = dpd_complex(y, cfg.window);
    auto vs = dpd_complex(direct_sum(x, y), cfg.window);
    if (vx.undetermined || vy.undetermined) {
      t.check(vs.undetermined, "sum with an undetermined summand came out determined",
              [&] { return json{{"x", doc(a.name, x)}, {"y", doc(a.name, y)}}; }, size_of(x) + size_of(y), i);
      continue;
    }
    if (vx.value.is_finite() != vy.value.is_finite()) ++mixed;
    t.check(!vs.undetermined && vs.value == max(vx.value, vy.value),
            "sup(" + vx.to_string() + ", " + vy.to_string() + ") vs " + vs.to_string(),
            [&] { return json{{"x", doc(a.name, x)}, {"y", doc(a.name, y)}}; }, size_of(x) + size_of(y), i);
  }
  return t.result(std::to_string(mixed) + " mixed finite/infinite pairs", cfg.samples);
}

inline PropertyResult stalk_identity(const Config& cfg) {
  const std::string name = "stalk complex matches module";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 5);
  auto algs = fixtures::all_algebras();
  for (int i = 0; i < cfg.samples; ++i) {
    const auto& a = algs[i % algs.size()];
    auto m = fixtures::random_module(a.alg, rng);
    auto vm = dpd_module(m, cfg.window);
    auto vc = dpd_complex(stalk(m, 0), cfg.window);
    t.check(vm.same_value(vc), "module " + vm.to_string() + " vs stalk " + vc.to_string(),
            [&] { return doc(a.name, m); }, m.total_dim(), i);
  }
  return t.result({}, cfg.samples);
}

inline PropertyResult sandwich_identity(const Config& cfg) {
  const std::string name = "finite projective dimension equals Dpd";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 6);
  auto algs = fixtures::all_algebras();
  int certified = 0;
  for (int attempt = 0; certified < cfg.samples && attempt < 20 * cfg.samples; ++attempt) {
    const auto& a = algs[attempt % algs.size()];
    auto x = fixtures::random_nonexact_complex(a.alg, rng);
    auto g = projective_dimension(x, cfg.window);
    if (!g) continue;
    ++certified;
    auto v = dpd_complex(x, cfg.window);
    t.check(!v.undetermined && v.value == *g, "pd " + g->to_string() + " vs Dpd " + v.to_string(),
            [&] { return doc(a.name, x); }, size_of(x), attempt);
  }
  return t.result(std::to_string(certified) + " complexes with certified finite pd", cfg.samples);
}

// ---------------------------------------------------------------------------
// Total acyclicity of splices

inline PropertyResult splice_total_acyclicity(const Config& cfg) {
  const std::string name = "splices are totally acyclic, negative controls fail";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  using namespace fixtures;
  Tally t(name, cfg);
  const int tw = cfg.ta_window;
  std::vector<std::pair<std::string, Representation>> dp;
  dp.push_back({"FIX1", simple_module(fix1(), 0)});
  dp.push_back({"FIX4", simple_module(fix4(), 0)});
  for (auto& a : all_algebras())
    for (int v = 0; v < a.alg->vertices(); ++v) dp.push_back({a.name, indecomposable_projective(a.alg, v)});
  Rng rng = rng_for(cfg, 7);
  for (int i = 0; i < 8; ++i) {
    const auto& a = i % 2 ? fix1() : fix4();
    auto m = random_nonzero_module(a, rng);
    if (is_ding_projective(m, cfg.window).answer == Answer::Yes) dp.push_back({i % 2 ? "FIX1" : "FIX4", m});
  }
  int idx = 0;
  for (auto& [an, g] : dp) {
    CompleteResolution cr = splice_complete_resolution(g, cfg.window);
    auto rep = check_totally_acyclic(cr, tw);
    t.check(rep.pass(), "splice fails " + (rep.pass() ? std::string() : rep.first_failure()->kind),
            [&, &an = an, &g = g] { return doc(an, g); }, g.total_dim(), idx);
    // cokernels across the splice are Ding projective again
    ChainComplex win = cr.window(-tw, tw);
    for (int n : {-4, -2, 0, 1, 3}) {
      auto c = cokernel_at(win, n).module;
      auto v = is_ding_projective(c, cfg.window, {.ta_window = 0});
      t.check(v.answer == Answer::Yes && replay(*v.certificate, c),
              "cokernel at " + std::to_string(n) + " is not certified", [&, &an = an, &g = g] { return doc(an, g); },
              g.total_dim(), idx);
    }
    ++idx;
  }
  // negative controls
  auto s2 = simple_module(fix3(), 1);
  auto zeros = minimal_projective_resolution(s2, tw).complex(tw);
  auto r1 = check_totally_acyclic(zeros, -tw, tw);
  t.check(!r1.pass() && (r1.first_failure()->kind == "exact" || r1.first_failure()->kind == "hom-exact"),
          "resolution of S_2 extended by zeros passed", [&] { return doc("FIX3", s2); }, 1, idx++);
  CompleteResolution bad = splice_unchecked(s2);
  auto r2 = check_totally_acyclic(bad, tw);
  t.check(!r2.pass() && r2.first_failure()->kind != "projective", "unchecked splice of S_2 passed",
          [&] { return doc("FIX3", s2); }, 1, idx++);
  auto s1 = simple_module(fix2(), 0);
  CompleteResolution bad2 = splice_unchecked(s1);
  auto r3 = check_totally_acyclic(bad2, tw);
  t.check(!r3.pass() && r3.first_failure()->kind != "projective", "unchecked splice of S_1 over FIX2 passed",
          [&] { return doc("FIX2", s1); }, 1, idx++);
  return t.result(std::to_string(dp.size()) + " splices at window " + std::to_string(tw));
}

// ---------------------------------------------------------------------------
// Lifting, homotopies, surjectivization

inline PropertyResult lifting(const Config& cfg) {
  const std::string name = "lifts extend, lifts are homotopic, surjectivization identities";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  using namespace fixtures;
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 8);
  int idx = 0;
  auto agrees = [](const ChainMap& f, const std::map<int, ModuleMap>& base, int n) {
    for (int i = std::max(n, f.source().lo()); i <= f.source().hi(); ++i) {
      auto it = base.find(i);
      if (it == base.end() ? !f.at(i).is_zero() : !(f.at(i) == it->second)) return false;
    }
    return true;
  };
  std::vector<std::pair<std::string, Representation>> gs = {{"FIX1", simple_module(fix1(), 0)},
                                                            {"FIX4", simple_module(fix4(), 0)}};
  for (int i = 0; i < 6; ++i) {
    auto m = random_nonzero_module(i % 2 ? fix1() : fix4(), rng);
    if (is_ding_projective(m, cfg.window, {.ta_window = 0}).answer == Answer::Yes)
      gs.push_back({i % 2 ? "FIX1" : "FIX4", m});
  }
  for (auto& [an, g] : gs) {
    CompleteResolution cr(g);
    ChainComplex tw = cr.window(-4, 4);
    const auto& alg = g.algebra();
    // Q: random bounded complex of projectives, base: random chain map on degrees >= 0
    auto q = shift(random_perfect_complex(alg, rng), -1);
    ChainComplex top = hard_below(tw, 0);
    ChainMap b = random_chain_map(top, q, rng);
    std::map<int, ModuleMap> base;
    for (int i = 0; i <= tw.hi(); ++i) base.emplace(i, b.at(i));
    try {
      ChainMap f = lift_chain_map(tw, q, 0, base);
      ChainMap f2 = lift_chain_map(tw, q, 0, base, 7 + idx);
      auto h = homotopy_between(f, f2, 0, true);
      t.check(f.commutes() && agrees(f, base, 0) && f2.commutes() && agrees(f2, base, 0) && h && h->verify(),
              "lift or homotopy failed", [&, &an = an, &g = g] { return doc(an, g); }, g.total_dim(), idx);
    } catch (const ExtensionObstructed& e) {
      t.fail(e.what(), doc(an, g), g.total_dim(), idx);
    }
    // identity on degrees >= 0 extends to a map homotopic to the identity
    std::map<int, ModuleMap> id;
    for (int i = 0; i <= tw.hi(); ++i) id.emplace(i, ModuleMap::identity(tw.term(i)));
    ChainMap e = lift_chain_map(tw, tw, 0, id, 3);
    auto h = homotopy_between(e, ChainMap::identity(tw), 0, true);
    t.check(h && h->verify(), "extension of the identity is not homotopic to the identity",
            [&, &an = an, &g = g] { return doc(an, g); }, g.total_dim(), idx);
    ++idx;
  }
  // surjectivization on complexes with finite Dpd
  std::vector<std::pair<std::string, ChainComplex>> xs = {{"FIX2", xfix2()}, {"FIX1", stalk(simple_module(fix1(), 0), 0)}};
  for (int i = 0; i < 8; ++i) {
    auto a = i % 2 ? fix2() : fix1();
    xs.push_back({i % 2 ? "FIX2" : "FIX1", random_nonexact_complex(a, rng)});
  }
  for (auto& [an, x] : xs) {
    auto v = dpd_complex(x, cfg.window);
    if (!finite(v)) continue;
    const int n = static_cast<int>(v.value.value);
    auto p = std::make_shared<ResolutionTail>(ResolutionTail::of_complex(x));
    auto fc = build_f_complete(p, n, 2, n + 3);
    bool ok = fc.tau.commutes() && fc.bijective_from(n);
    auto sz = surjectivize(fc, n);
    ok = ok && sz.f.surjective() && sz.alpha.commutes() && sz.f.tau.commutes() && sz.f.bijective_from(n);
    ChainMap comp = compose(sz.f.tau, sz.alpha);
    for (int i = fc.t.lo(); i <= fc.t.hi(); ++i) ok = ok && comp.at(i).components() == fc.tau.at(i).components();
    for (int i = n; i <= fc.t.hi(); ++i)
      for (int w = 0; w < x.algebra()->vertices(); ++w)
        ok = ok && sz.alpha.at(i).at(w) == FpMatrix::identity(x.p(), fc.t.term(i).dim(w));
    ok = ok && is_quasi_iso(sz.alpha);
    t.check(ok, "surjectivization identities fail", [&, &an = an, &x = x] { return doc(an, x); }, size_of(x), idx++);
  }
  return t.result();
}

// ---------------------------------------------------------------------------
// Ext of cokernels vs RHom

inline PropertyResult ext_rhom_bridge(const Config& cfg) {
  const std::string name = "Ext of cokernels equals RHom homology";
  using namespace fixtures;
  Tally t(name, cfg);
  std::vector<std::pair<std::string, ChainComplex>> xs = {
      {"FIX1", stalk(simple_module(fix1(), 0), 0)}, {"FIX2", stalk(simple_module(fix2(), 0), 0)},
      {"FIX2", xfix2()},                            {"FIX3", stalk(simple_module(fix3(), 1), 0)},
      {"FIX3", stalk(simple_module(fix3(), 0), 0)}, {"FIX4", stalk(simple_module(fix4(), 0), 0)},
      {"FIX2", shift(xfix2(), 3)}};
  int idx = 0;
  for (auto& [an, x] : xs) {
    HomologyProfile hp = homology_profile(x);
    const int h = static_cast<int>(hp.hsup.value);
    auto tail = ResolutionTail::of_complex(x);
    std::optional<DpdVerdict> v;
    if (cfg.window >= 2) v = dpd_complex(x, cfg.window);
    for (int n : {h, h + 1})
      for (int m = 1; m <= 3; ++m)
        for (int q = 0; q < x.algebra()->vertices(); ++q) {
          auto f = indecomposable_projective(x.algebra(), q);
          const int deg = -(m + n);
          const std::size_t rh = rhom(x, stalk(f, 0), deg, deg).at(deg);
          const std::size_t ep = ext_group(cokernel_at(tail.complex(n + 1), n).module, f, m).dim;
          bool ok = ep == rh;
          if (v && finite(*v)) ok = ok && ext_group(cokernel_at(*v->witness, n).module, f, m).dim == rh;
          t.check(ok,
                  "m=" + std::to_string(m) + " n=" + std::to_string(n) + " F=P_" + std::to_string(q) +
                      ": Ext " + std::to_string(ep) + " vs H " + std::to_string(rh),
                  [&, &an = an, &x = x] { return doc(an, x); }, size_of(x), idx);
        }
    ++idx;
  }
  return t.result();
}

// ---------------------------------------------------------------------------
// Ext oracle

inline PropertyResult ext_oracle(const Config& cfg) {
  const std::string name = "minimal and non-minimal Ext agree";
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 9);
  auto algs = fixtures::all_algebras();
  for (int i = 0; i < cfg.ext_triples; ++i) {
    const auto& a = algs[i % algs.size()];
    auto m = fixtures::random_module(a.alg, rng), n = fixtures::random_module(a.alg, rng);
    const int deg = fixtures::uniform(rng, 0, 6);
    const auto o = oracle::ext_dims(m, n, deg);
    const auto e = ext_group(m, n, deg).dim;
    t.check(o[deg] == e,
            "Ext^" + std::to_string(deg) + ": " + std::to_string(e) + " vs oracle " + std::to_string(o[deg]),
            [&] { return json{{"m", doc(a.name, m)}, {"n", doc(a.name, n)}, {"i", deg}}; },
            m.total_dim() + n.total_dim(), i);
  }
  return t.result({}, cfg.ext_triples);
}

// ---------------------------------------------------------------------------
// Two of three

inline PropertyResult two_of_three(const Config& cfg) {
  const std::string name = "two of three in split short exact sequences";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 10);
  auto algs = pick({"FIX1", "FIX2", "FIX3", "FIX4"});
  int informative = 0, determined = 0;
  for (int attempt = 0; determined < cfg.sequences && attempt < 5 * cfg.sequences; ++attempt) {
    const auto& a = algs[attempt % algs.size()];
    auto x = fixtures::random_complex(a.alg, rng), y = fixtures::random_complex(a.alg, rng);
    auto f = fixtures::random_chain_map(x, y, rng);
    // 0 -> Y -> Cone(f) -> Sigma X -> 0, degreewise split
    std::vector<DpdVerdict> vs = {dpd_complex(y, cfg.window), dpd_complex(mapping_cone(f), cfg.window),
                                  dpd_complex(shift(x, 1), cfg.window)};
    if (std::any_of(vs.begin(), vs.end(), [](const DpdVerdict& v) { return v.undetermined; })) continue;
    ++determined;
    const int nb = static_cast<int>(std::count_if(vs.begin(), vs.end(), bounded));
    if (nb == 2 || nb == 3) ++informative;
    t.check(nb != 2, "two finite verdicts, third +inf",
            [&] { return json{{"x", doc(a.name, x)}, {"y", doc(a.name, y)}}; }, size_of(x) + size_of(y), attempt);
  }
  return t.result(std::to_string(informative) + " sequences with two or more finite verdicts", cfg.sequences);
}

// ---------------------------------------------------------------------------
// Change of rings along the identity over FIX4

inline PropertyResult change_of_rings(const Config& cfg) {
  const std::string name = "RHom and tensor bounds over FIX4";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 11);
  const auto& alg = fixtures::fix4();
  int done = 0;
  for (int attempt = 0; done < cfg.perfect && attempt < 10 * cfg.perfect; ++attempt) {
    auto u = fixtures::random_perfect_complex(alg, rng, 2, 2);
    if (is_exact(u)) continue;
    auto x = fixtures::random_nonexact_complex(alg, rng, 2, 1);
    ++done;
    const ExtInt inf_u = homology_profile(u).hinf;
    const auto pd_u = projective_dimension(u, cfg.window);
    auto dx = dpd_complex(x, cfg.window);
    auto dh = dpd_complex(hom_module_complex(u, x), cfg.window);
    auto dt = dpd_complex(tensor_complex(u, x), cfg.window);
    bool ok = finite(dx) && pd_u && !dh.undetermined && !dt.undetermined;
    ok = ok && dh.value <= dx.value - inf_u.value && dt.value <= dx.value + pd_u->value;
    t.check(ok,
            "Dpd(X)=" + dx.to_string() + " inf U=" + inf_u.to_string() + " Dpd(RHom)=" + dh.to_string() +
                " Dpd(tensor)=" + dt.to_string(),
            [&] { return json{{"u", doc("FIX4", u)}, {"x", doc("FIX4", x)}}; }, size_of(u) + size_of(x), attempt);
  }
  return t.result({}, cfg.perfect);
}

// ---------------------------------------------------------------------------
// Honesty

inline PropertyResult honesty(const Config& cfg) {
  const std::string name = "growing syzygies stay undetermined";
  Tally t(name, cfg);
  auto k = simple_module(fixtures::honesty(), 0);
  long prev = -1;
  std::string trace;
  for (int w : {4, 6, 8}) {
    auto v = dpd_module(k, w);
    trace += (trace.empty() ? "" : ", ") + std::string("window ") + std::to_string(w) + ": " + v.to_string();
    bool ok = v.undetermined && v.lower_bound > prev && (w < 8 || v.lower_bound >= 4);
    t.check(ok, "window " + std::to_string(w) + " gave " + v.to_string(),
            [&] { return json{{"algebra", "F2[x,y]/(x^2,xy,y^2)"}, {"module", io::module_to_json(k)}}; }, 1, w);
    prev = v.lower_bound;
  }
  return t.result(trace);
}

// ---------------------------------------------------------------------------
// Standing invariants of the lower layers

inline PropertyResult linear_algebra(const Config& cfg) {
  Tally t("rref idempotent, rank-nullity, solutions verify", cfg);
  Rng rng = rng_for(cfg, 12);
  for (int i = 0; i < cfg.samples; ++i) {
    const Residue p = std::vector<Residue>{2, 3, 5, 7, 65521}[i % 5];
    auto m = fixtures::random_matrix(p, fixtures::uniform(rng, 0, 6), fixtures::uniform(rng, 0, 6), rng);
    auto r = rref_rank(m);
    auto r2 = rref_rank(r.rref);
    auto ki = kernel_image(m);
    bool ok = r.rref == r2.rref && r.rank == r2.rank && ki.kernel.cols() + ki.image.cols() == m.cols() &&
              (m * ki.kernel).is_zero();
    auto b = m * fixtures::random_matrix(p, m.cols(), 1, rng);
    auto x = solve_linear(m, b);
    ok = ok && x && m * *x == b;
    t.check(ok, "linear algebra invariant", [&] { return json{{"p", p}, {"m", io::matrix_to_json(m)}}; },
            m.rows() * m.cols(), i);
  }
  return t.result({}, cfg.samples);
}

inline PropertyResult algebra_structure(const Config& cfg) {
  Tally t("algebras: regular decomposition, associativity, opposite involution", cfg);
  int idx = 0;
  for (auto& a : fixtures::all_algebras()) {
    auto reg = regular_module(a.alg);
    bool ok = a.alg->check_associative() && reg.total_dim() == a.alg->dim();
    ok = ok && a.alg->opposite()->opposite()->dim() == a.alg->dim();
    for (int v = 0; v < a.alg->vertices(); ++v) {
      auto pv = indecomposable_projective(a.alg, v);
      DualModule d = dual_star(pv);
      ok = ok && double_dual_map(pv, d, dual_star(d.module)).is_iso();
    }
    t.check(ok, "structure check", [&] { return io::algebra_to_json(a.alg); }, a.alg->dim(), idx++);
  }
  return t.result();
}

inline PropertyResult complex_calculus(const Config& cfg) {
  Tally t("shift homology, cone criterion, truncations", cfg);
  Rng rng = rng_for(cfg, 13);
  auto algs = fixtures::all_algebras();
  for (int i = 0; i < cfg.samples; ++i) {
    const auto& a = algs[i % algs.size()];
    auto c = fixtures::random_complex(a.alg, rng);
    const int k = fixtures::uniform(rng, -3, 3);
    auto s = shift(c, k);
    bool ok = shift(s, -k) == c;
    for (int n = c.lo() - 1; n <= c.hi() + 1; ++n)
      ok = ok && homology(s, n + k).dims() == homology(c, n).dims();
    auto d = fixtures::random_complex(a.alg, rng);
    auto f = fixtures::random_chain_map(c, d, rng);
    ok = ok && is_quasi_iso(f) == is_exact(mapping_cone(f));
    ok = ok && is_exact(mapping_cone(ChainMap::identity(c)));
    const int n = fixtures::uniform(rng, c.lo(), c.hi() + 1);
    auto hb = hard_below(c, n), ha = hard_above(c, n - 1);
    for (int j = c.lo(); j <= c.hi(); ++j) ok = ok && (j >= n ? hb.term(j) : ha.term(j)) == c.term(j);
    auto hp = homology_profile(c);
    if (!hp.exact()) {
      const int h = static_cast<int>(hp.hsup.value);
      auto sa = soft_above(c, h);
      for (int j = c.lo(); j <= c.hi(); ++j) ok = ok && homology(sa, j).dims() == homology(c, j).dims();
    }
    t.check(ok, "complex calculus invariant", [&] { return doc(a.name, c); }, size_of(c), i);
  }
  return t.result({}, cfg.samples);
}

inline PropertyResult resolution_invariants(const Config& cfg) {
  Tally t("resolutions: quasi-isomorphic, minimal, matching syzygies", cfg);
  Rng rng = rng_for(cfg, 14);
  auto algs = fixtures::all_algebras();
  const int count = std::max(1, cfg.samples / 2);
  for (int i = 0; i < count; ++i) {
    const auto& a = algs[i % algs.size()];
    auto x = fixtures::random_complex(a.alg, rng);
    auto tail = ResolutionTail::of_complex(x);
    bool ok = true;
    const int top = std::max(x.hi(), tail.lowest()) + 3;
    for (int d = x.hi() + 1; d <= top; ++d) {
      ok = ok && is_quasi_iso_through(tail.augmentation_map(d), d - 1);
      for (int n = tail.lowest(); n <= d; ++n) ok = ok && is_projective(tail.term(n));
    }
    auto m = fixtures::random_module(a.alg, rng);
    auto r = minimal_projective_resolution(m, 4);
    MinimalResolution mr(m);
    for (int n = 1; n <= 4; ++n) ok = ok && lands_in_radical(r.differential(n));
    ok = ok && is_isomorphic(syzygy(syzygy(m)), mr.syzygy(2)).has_value();
    for (int n = 0; n <= 3; ++n) ok = ok && is_isomorphic(cokernel(r.differential(n + 1)).module, mr.syzygy(n)).has_value();
    t.check(ok, "resolution invariant", [&] { return json{{"x", doc(a.name, x)}, {"m", doc(a.name, m)}}; },
            size_of(x) + m.total_dim(), i);
  }
  return t.result({}, count);
}

inline PropertyResult certificates(const Config& cfg) {
  const std::string name = "certificates replay, resolution independence, resolving closure";
  if (cfg.window < 2) return skipped(name, "Ding projectivity needs window >= 2");
  Tally t(name, cfg);
  Rng rng = rng_for(cfg, 15);
  auto algs = fixtures::all_algebras();
  const int count = std::max(1, cfg.samples / 2);
  for (int i = 0; i < count; ++i) {
    const auto& a = algs[i % algs.size()];
    auto m = fixtures::random_module(a.alg, rng);
    auto vm = dpd_module(m, cfg.window);
    bool ok = replay_verdict(vm, m);
    auto x = fixtures::random_complex(a.alg, rng);
    auto vx = dpd_complex(x, cfg.window);
    ok = ok && replay_verdict(vx, x, cfg.window);
    // adjoin a contractible projective summand to the resolution
    auto tail = std::make_shared<ResolutionTail>(ResolutionTail::of_complex(x));
    const int at = (x.is_zero() ? 0 : x.hi()) + fixtures::uniform(rng, 0, 2);
    auto q = indecomposable_projective(a.alg, fixtures::uniform(rng, 0, a.alg->vertices() - 1));
    auto d = fixtures::disk(q, at);
    auto vd = dpd_from_resolution(x, [&](int deg) { return direct_sum(tail->complex(deg), d); }, cfg.window);
    ok = ok && vd.same_value(vx);
    t.check(ok, "verdict " + vx.to_string() + " vs with disk " + vd.to_string(),
            [&] { return json{{"x", doc(a.name, x)}, {"m", doc(a.name, m)}}; }, size_of(x) + m.total_dim(), i);
  }
  // closure of certified Ding projectives under sums and kernels of surjections
  for (int i = 0; i < count; ++i) {
    const auto& alg = i % 2 ? fixtures::fix1() : fixtures::fix4();
    auto g1 = fixtures::random_nonzero_module(alg, rng), g2 = fixtures::random_nonzero_module(alg, rng);
    if (is_ding_projective(g1, cfg.window, {.ta_window = 0}).answer != Answer::Yes ||
        is_ding_projective(g2, cfg.window, {.ta_window = 0}).answer != Answer::Yes)
      continue;
    bool ok = is_ding_projective(direct_sum(g1, g2), cfg.window, {.ta_window = 0}).answer == Answer::Yes;
    Cover c = top_and_cover(g2);
    auto f = fixtures::random_hom(g1, g2, rng);
    ModuleMap onto = block_map({g1, c.free.rep()}, {g2}, {{f, c.map}}, alg);
    auto k = kernel(onto).module;
    ok = ok && is_ding_projective(k, cfg.window, {.ta_window = 0}).answer == Answer::Yes;
    t.check(ok, "closure", [&] { return json{{"g1", doc("", g1)}, {"g2", doc("", g2)}}; },
            g1.total_dim() + g2.total_dim(), count + i);
  }
  return t.result();
}

// ---------------------------------------------------------------------------

struct Report {
  Config config;
  std::vector<PropertyResult> properties;

  bool pass() const {
    return std::none_of(properties.begin(), properties.end(),
                        [](const PropertyResult& r) { return r.status == Status::Fail; });
  }
  json to_json() const {
    json props = json::array();
    for (const auto& p : properties) props.push_back(p.to_json());
    return {{"seed", config.seed}, {"window", config.window}, {"pass", pass()}, {"properties", props}};
  }
  std::string to_text() const {
    std::string s;
    for (const auto& p : properties) {
      s += std::string(to_string(p.status)) + "  " + p.name + " (" + std::to_string(p.instances) + ")";
      if (!p.detail.empty()) s += "  " + p.detail;
      s += "\n";
      if (p.status == Status::Fail) s += "      reproducer: " + p.reproducer.dump() + "\n";
    }
    s += pass() ? "suite: pass\n" : "suite: FAIL\n";
    return s;
  }
};

using PropertyFn = PropertyResult (*)(const Config&);

inline std::vector<std::pair<std::string, PropertyFn>> registry() {
  return {{"linear-algebra", linear_algebra},
          {"algebras", algebra_structure},
          {"complexes", complex_calculus},
          {"resolutions", resolution_invariants},
          {"fixtures", fixture_verdicts},
          {"functorial", functorial_agreement},
          {"shift", shift_identity},
          {"direct-sum", direct_sum_identity},
          {"stalk", stalk_identity},
          {"sandwich", sandwich_identity},
          {"total-acyclicity", splice_total_acyclicity},
          {"lifting", lifting},
          {"ext-rhom", ext_rhom_bridge},
          {"ext-oracle", ext_oracle},
          {"two-of-three", two_of_three},
          {"change-of-rings", change_of_rings},
          {"honesty", honesty},
          {"certificates", certificates}};
}

/// Property errors (engine exceptions) are reported as failures, never propagated.
inline PropertyResult run_property(const std::string& key, PropertyFn fn, const Config& cfg) {
  try {
    return fn(cfg);
  } catch (const std::exception& e) {
    return {key, Status::Fail, 0, std::string("exception: ") + e.what(),
            json{{"property", key}, {"seed", cfg.seed}, {"window", cfg.window}}};
  }
}

inline Report run_suite(const Config& cfg) {
  Report r{cfg, {}};
  for (auto& [key, fn] : registry()) r.properties.push_back(run_property(key, fn, cfg));
  return r;
}

}  // namespace dpd::suite
