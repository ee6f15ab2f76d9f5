#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpd/complex.hpp"

namespace dpd {

struct ExtensionObstructed : Error {
  using Error::Error;
};
struct ThresholdViolated : Error {
  using Error::Error;
};
struct NotDingProjective : Error {
  using Error::Error;
};

/// Splits a map into a direct sum target into its components.
inline std::vector<ModuleMap> split_target(const ModuleMap& f, const std::vector<Representation>& parts) {
  std::vector<ModuleMap> out;
  const auto& alg = f.source().algebra();
  std::vector<std::size_t> row(alg->vertices(), 0);
  for (const auto& part : parts) {
    std::vector<FpMatrix> comps;
    for (int v = 0; v < alg->vertices(); ++v) {
      comps.push_back(f.at(v).block(row[v], 0, part.dim(v), f.source().dim(v)));
      row[v] += part.dim(v);
    }
    out.emplace_back(f.source(), part, std::move(comps));
  }
  return out;
}

/// Projective resolution P -> X of a bounded complex, materialized on demand.
/// Degree by degree, P_n is a projective cover of the cycles of Cone(P_{<n} -> X) in degree n
/// modulo the boundaries coming from X; the cone is then exact in every finished degree.
/// Starting from stalk(M, 0) this is exactly the minimal projective resolution of M.
class ResolutionTail {
 public:
  static ResolutionTail of_module(const Representation& m) {
    ResolutionTail r(stalk(m, 0));
    r.minimal_ = true;
    return r;
  }

  static ResolutionTail of_complex(const ChainComplex& x) {
    ResolutionTail r(x);
    bool projective = true;
    for (int n = x.lo(); n <= x.hi() && projective; ++n) projective = is_projective(x.term(n));
    r.passthrough_ = projective;
    return r;
  }

  const ChainComplex& target() const { return target_; }
  bool minimal() const { return minimal_; }
  /// True when the input already consisted of projectives and is returned unchanged.
  bool passthrough() const { return passthrough_; }
  int lowest() const { return lo_; }
  int materialized() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

  void extend_to(int d) {
    while (materialized() < d) step();
  }

  const Representation& term(int n) {
    if (n < lo_) return zero_;
    extend_to(n);
    return terms_[n - lo_];
  }

  /// P_n -> P_{n-1}.
  ModuleMap differential(int n) {
    extend_to(n);
    if (n <= lo_) return ModuleMap::zero(term(n), term(n - 1));
    return diffs_[n - lo_ - 1];
  }

  /// P_n -> X_n.
  ModuleMap augmentation(int n) {
    if (n < lo_) return ModuleMap::zero(zero_, target_.term(n));
    extend_to(n);
    return aug_[n - lo_];
  }

  /// P restricted to degrees <= d.
  ChainComplex complex(int d) {
    extend_to(d);
    std::vector<Representation> terms;
    std::vector<ModuleMap> diffs;
    for (int n = lo_; n <= d; ++n) {
      terms.push_back(terms_[n - lo_]);
      if (n > lo_) diffs.push_back(diffs_[n - lo_ - 1]);
    }
    if (terms.empty()) return ChainComplex::zero(target_.algebra());
    return {target_.algebra(), lo_, std::move(terms), std::move(diffs)};
  }

  /// The augmentation restricted to degrees <= d.
  ChainMap augmentation_map(int d) {
    ChainComplex p = complex(d);
    std::map<int, ModuleMap> m;
    for (int n = p.lo(); n <= p.hi(); ++n) m.emplace(n, augmentation(n));
    return {p, target_, std::move(m)};
  }

 private:
  explicit ResolutionTail(ChainComplex x) : target_(std::move(x)) {
    zero_ = Representation::zero(target_.algebra());
    lo_ = target_.empty_range() ? 0 : target_.lo();
  }

  void step() {
    const int n = materialized() + 1;
    if (passthrough_) {
      push(n, target_.term(n), target_.differential(n), ModuleMap::identity(target_.term(n)));
      return;
    }
    const auto& alg = target_.algebra();
    const Representation& pm1 = n - 1 >= lo_ ? terms_[n - 1 - lo_] : zero_;
    const Representation& pm2 = n - 2 >= lo_ ? terms_[n - 2 - lo_] : zero_;
    ModuleMap dm1 = n - 1 > lo_ ? diffs_[n - 2 - lo_] : ModuleMap::zero(pm1, pm2);
    ModuleMap am1 = n - 1 >= lo_ ? aug_[n - 1 - lo_] : ModuleMap::zero(pm1, target_.term(n - 1));
    const Representation& xn = target_.term(n);
    // cone_n = P_{n-1} + X_n -> P_{n-2} + X_{n-1}
    ModuleMap cone_d = block_map({pm1, xn}, {pm2, target_.term(n - 1)},
                                 {{dm1.negated(), std::nullopt}, {am1, target_.differential(n)}}, alg);
    Submodule z = kernel(cone_d);
    ModuleMap from_x = block_map({target_.term(n + 1)}, {pm1, xn}, {{std::nullopt}, {target_.differential(n + 1)}}, alg);
    QuotientModule q = cokernel(factor_through_sub(from_x, z.inclusion));
    Cover cov = top_and_cover(q.module);
    std::vector<FpMatrix> lifts;
    for (std::size_t g = 0; g < cov.free.rank(); ++g) {
      const int v = cov.free.generators()[g];
      auto x = solve_linear(q.projection.at(v), cov.generators[g]);
      lifts.push_back(std::move(*x));
    }
    ModuleMap into_cone = compose(z.inclusion, map_from_free(cov.free, z.module, lifts));
    auto parts = split_target(into_cone, {pm1, xn});
    push(n, cov.free.rep(), parts[0].negated(), parts[1]);
  }

  void push(int n, Representation t, ModuleMap d, ModuleMap a) {
    terms_.push_back(std::move(t));
    if (n > lo_) diffs_.push_back(std::move(d));
    aug_.push_back(std::move(a));
  }

  ChainComplex target_;
  Representation zero_;
  int lo_ = 0;
  bool minimal_ = false;
  bool passthrough_ = false;
  std::deque<Representation> terms_;
  std::deque<ModuleMap> diffs_;  // d_n for n = lo_+1, ...
  std::deque<ModuleMap> aug_;
};

inline ResolutionTail minimal_projective_resolution(const Representation& m, int d) {
  auto r = ResolutionTail::of_module(m);
  r.extend_to(d);
  return r;
}

inline ResolutionTail dg_projective_resolution(const ChainComplex& x, int d) {
  auto r = ResolutionTail::of_complex(x);
  r.extend_to(d);
  return r;
}

/// Differentials of a minimal resolution land in the radical of their target.
inline bool lands_in_radical(const ModuleMap& d) {
  auto rad = radical_span(d.target());
  for (int v = 0; v < d.source().algebra()->vertices(); ++v) {
    const auto& col = d.at(v);
    if (col.cols() == 0) continue;
    if (rad[v].cols() == 0) {
      if (!col.is_zero()) return false;
      continue;
    }
    if (!CoordinateSolver(rad[v]).coordinates(col)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Complete resolutions by splicing

/// Doubly infinite complex T of projectives with C_center(T) = G:
/// degrees >= center come from a projective resolution of G, degrees < center from the
/// dual of the minimal resolution of G* over the opposite algebra.
class CompleteResolution {
 public:
  /// Left part is the minimal resolution of g, center 0.
  explicit CompleteResolution(const Representation& g)
      : CompleteResolution(std::make_shared<ResolutionTail>(ResolutionTail::of_module(g)), 0) {}

  /// Left part is left's degrees >= center; G = Coker(left's differential into center).
  CompleteResolution(std::shared_ptr<ResolutionTail> left, int center) : left_(std::move(left)), center_(center) {
    left_->extend_to(center_ + 1);
    q_ = cokernel(left_->differential(center_ + 1));
    dual_g_ = dual_star(q_.module);
    ddual_g_ = dual_star(dual_g_.module);
    eta_ = double_dual_map(q_.module, dual_g_, ddual_g_);
    right_ = std::make_shared<ResolutionTail>(ResolutionTail::of_module(dual_g_.module));
  }

  const Representation& module() const { return q_.module; }
  int center() const { return center_; }
  const AlgebraPtr& algebra() const { return q_.module.algebra(); }
  ResolutionTail& left() { return *left_; }
  ResolutionTail& right() { return *right_; }
  const ModuleMap& reflexivity_map() const { return eta_; }

  const Representation& term(int n) {
    if (n >= center_) return left_->term(n);
    return right_dual(center_ - 1 - n).module;
  }

  /// T_n -> T_{n-1}.
  ModuleMap differential(int n) {
    if (n > center_) return left_->differential(n);
    if (n == center_) {
      const DualModule& r0 = right_dual(0);
      ModuleMap eps_star = dual_map(right_->augmentation(0), r0, ddual_g_);
      return compose(eps_star, compose(eta_, q_.projection));
    }
    const int j = center_ - 1 - n;  // T_n = R_j^*, T_{n-1} = R_{j+1}^*
    return dual_map(right_->differential(j + 1), right_dual(j + 1), right_dual(j));
  }

  ChainComplex window(int from, int to) {
    std::vector<Representation> terms;
    std::vector<ModuleMap> diffs;
    for (int n = from; n <= to; ++n) {
      terms.push_back(term(n));
      if (n > from) diffs.push_back(differential(n));
    }
    if (terms.empty()) return ChainComplex::zero(algebra());
    return {algebra(), from, std::move(terms), std::move(diffs)};
  }

 private:
  const DualModule& right_dual(int j) {
    while (static_cast<int>(right_duals_.size()) <= j)
      right_duals_.push_back(dual_star(right_->term(static_cast<int>(right_duals_.size()))));
    return right_duals_[j];
  }

  std::shared_ptr<ResolutionTail> left_;
  int center_;
  QuotientModule q_;
  DualModule dual_g_, ddual_g_;
  ModuleMap eta_;
  std::shared_ptr<ResolutionTail> right_;
  std::deque<DualModule> right_duals_;
};

/// Splice without certification; dingdim's wrapper refuses modules that are not Ding projective.
inline CompleteResolution splice_unchecked(const Representation& g) { return CompleteResolution(g); }

// ---------------------------------------------------------------------------
// Windowed total acyclicity

struct TaCheck {
  std::string kind;  // "projective", "exact", "hom-exact"
  int degree = 0;
  int vertex = -1;
  bool pass = true;
};

struct TaReport {
  int from = 0, to = 0;
  std::vector<TaCheck> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const TaCheck& c) { return c.pass; });
  }
  std::optional<TaCheck> first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return c;
    return std::nullopt;
  }
};

/// Checks a complex known on [from, to] (zero outside its storage range).
/// Only degrees whose data lies entirely inside the window are reported.
inline TaReport check_totally_acyclic(const ChainComplex& t, int from, int to) {
  TaReport rep{from, to, {}};
  ChainComplex w = window(t, from, to);
  for (int n = from; n <= to; ++n) rep.checks.push_back({"projective", n, -1, is_projective(t.term(n))});
  for (int n = from + 1; n <= to - 1; ++n) rep.checks.push_back({"exact", n, -1, homology(w, n).is_zero()});
  // Hom(T, P_v) in degree l involves T_{-l-1}, T_{-l}, T_{-l+1}.
  if (!w.empty_range())
    for (int v = 0; v < t.algebra()->vertices(); ++v) {
      GradedVectorComplex h = hom_complex(w, stalk(indecomposable_projective(t.algebra(), v), 0));
      for (int l = -to + 1; l <= -from - 1; ++l) rep.checks.push_back({"hom-exact", l, v, h.homology_dim(l) == 0});
    }
  return rep;
}

inline TaReport check_totally_acyclic(CompleteResolution& t, int w) {
  const int c = t.center();
  return check_totally_acyclic(t.window(c - w, c + w), c - w, c + w);
}

// ---------------------------------------------------------------------------
// Lifting and homotopies

/// Solves x o d = r for x in Hom(d.target(), r.target()); also returns the solution freedom.
struct PrecomposeSolution {
  ModuleMap x;
  std::vector<ModuleMap> freedom;
};

inline std::optional<PrecomposeSolution> solve_precompose(const ModuleMap& d, const ModuleMap& r) {
  HomSpace h(d.target(), r.target());
  const Residue p = r.source().p();
  FpMatrix rhs = flatten(r);
  if (h.dim() == 0) {
    if (!r.is_zero()) return std::nullopt;
    return PrecomposeSolution{ModuleMap::zero(d.target(), r.target()), {}};
  }
  std::vector<FpMatrix> cols;
  for (const auto& b : h.basis()) cols.push_back(flatten(compose(b, d)));
  FpMatrix sys = hstack(cols, p, rhs.rows());
  auto c = solve_linear(sys, rhs);
  if (!c) return std::nullopt;
  PrecomposeSolution out{h.element(*c), {}};
  FpMatrix k = kernel(sys);
  for (std::size_t j = 0; j < k.cols(); ++j) out.freedom.push_back(h.element(k.col(j)));
  return out;
}

inline ModuleMap random_variation(const PrecomposeSolution& s, std::mt19937_64& rng) {
  ModuleMap x = s.x;
  const Residue p = x.source().p();
  std::uniform_int_distribution<Residue> coef(0, p - 1);
  for (const auto& f : s.freedom) x = x + f.scaled(coef(rng));
  return x;
}

/// Extends base (given in degrees >= n, commuting there) to a chain map T -> Q, going down degree by degree.
/// seed 0 takes the canonical particular solution at every step; other seeds add random solution freedom.
inline ChainMap lift_chain_map(const ChainComplex& t, const ChainComplex& q, int n, const std::map<int, ModuleMap>& base,
                               std::uint64_t seed = 0) {
  std::map<int, ModuleMap> phi;
  for (int i = std::max(n, t.lo()); i <= t.hi(); ++i) {
    auto it = base.find(i);
    phi.emplace(i, it != base.end() ? it->second : ModuleMap::zero(t.term(i), q.term(i)));
  }
  std::mt19937_64 rng(seed);
  for (int i = std::min(n, t.hi() + 1); i - 1 >= t.lo(); --i) {
    ModuleMap phi_i = phi.count(i) ? phi.at(i) : ModuleMap::zero(t.term(i), q.term(i));
    ModuleMap r = compose(q.differential(i), phi_i);
    auto sol = solve_precompose(t.differential(i), r);
    if (!sol)
      throw ExtensionObstructed("cannot extend the chain map to degree " + std::to_string(i - 1));
    phi.insert_or_assign(i - 1, seed ? random_variation(*sol, rng) : sol->x);
  }
  ChainMap out(t, q, std::move(phi));
  if (!out.commutes()) throw ExtensionObstructed("extended map does not commute with the differentials");
  return out;
}

/// A homotopy f ~ g for chain maps that agree in degrees >= n.
/// With window_edge set, T is a window of a longer complex: the bottom degree would need s below the
/// window, so the identity is claimed from lo(T) + 1 up.
inline std::optional<Homotopy> homotopy_between(const ChainMap& f, const ChainMap& g, int n, bool window_edge = false) {
  const auto& t = f.source();
  const auto& q = f.target();
  Homotopy h{f, g, {}, std::nullopt};
  if (window_edge) h.from = t.lo() + 1;
  for (int i = t.hi(); i >= n; --i)
    if (!(f.at(i) == g.at(i))) return std::nullopt;
  // s_i = 0 for i >= n - 1; solve s_{i-1} d_i = f_i - g_i - d s_i going down.
  for (int i = std::min(n - 1, t.hi()); i >= t.lo(); --i) {
    ModuleMap r = f.at(i) - g.at(i) - compose(q.differential(i + 1), h.at(i));
    if (i - 1 < t.lo()) {
      if (!r.is_zero() && !window_edge) return std::nullopt;
      break;
    }
    auto sol = solve_precompose(t.differential(i), r);
    if (!sol) return std::nullopt;
    h.s.insert_or_assign(i - 1, sol->x);
  }
  if (!h.verify()) return std::nullopt;
  return h;
}

// ---------------------------------------------------------------------------
// F-complete resolutions

/// Windowed diagram T -> P (-> X) with tau_i bijective for i >= threshold.
struct FCompleteResolution {
  ChainComplex t;
  ChainComplex p;
  ChainMap tau;
  int threshold = 0;

  bool bijective_from(int g) const {
    for (int i = g; i <= t.hi(); ++i)
      if (!tau.at(i).is_iso()) return false;
    return true;
  }
  bool surjective() const {
    for (int i = std::min(t.lo(), p.lo()); i <= std::max(t.hi(), p.hi()); ++i)
      if (!tau.at(i).is_surjective() && !(t.term(i).is_zero() && p.term(i).is_zero())) return false;
    return true;
  }
};

/// Builds T by splicing at the threshold n (C_n(P) must be Ding projective) and tau by lifting
/// the identity on degrees >= n; the window is [lowest(P) - depth_below, top].
inline FCompleteResolution build_f_complete(const std::shared_ptr<ResolutionTail>& p, int n, int depth_below, int top) {
  p->extend_to(top);
  CompleteResolution cr(p, n);
  const int lo = std::min(p->lowest(), n) - depth_below;
  ChainComplex t = cr.window(lo, top);
  ChainComplex pc = p->complex(top);
  std::map<int, ModuleMap> base;
  for (int i = n; i <= top; ++i) base.emplace(i, ModuleMap::identity(pc.term(i)));
  ChainMap tau = lift_chain_map(t, pc, n, base);
  return {t, pc, tau, n};
}

struct Surjectivized {
  FCompleteResolution f;
  ChainMap alpha;  // T -> T'
};

/// T'_n = T_n + Y_n + Y_{n+1} with Y the degrees <= g-1 of P; the extra summands form disks
/// (a, b) |-> (0, a). tau'(t, a, b) = tau t + a + d b, alpha = inclusion of T.
inline Surjectivized surjectivize(const FCompleteResolution& f, int g) {
  if (!f.bijective_from(g)) throw ThresholdViolated("tau is not bijective in every degree >= " + std::to_string(g));
  const auto& t = f.t;
  const auto& p = f.p;
  const auto& alg = t.algebra();
  const Representation zero = Representation::zero(alg);
  auto y = [&](int n) -> Representation { return n <= g - 1 ? p.term(n) : zero; };
  const int lo = std::min(t.lo(), p.lo() - 1), hi = t.hi();
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  std::map<int, ModuleMap> tau2, alpha;
  for (int n = lo; n <= hi; ++n) {
    std::vector<Representation> parts{t.term(n), y(n), y(n + 1)};
    terms.push_back(direct_sum(parts, alg));
    if (n > lo) {
      std::vector<Representation> below{t.term(n - 1), y(n - 1), y(n)};
      diffs.push_back(block_map(parts, below,
                                {{t.differential(n), std::nullopt, std::nullopt},
                                 {std::nullopt, std::nullopt, std::nullopt},
                                 {std::nullopt, ModuleMap::identity(y(n)), std::nullopt}},
                                alg));
    }
    ModuleMap b_to_p = n + 1 <= g - 1 ? p.differential(n + 1) : ModuleMap::zero(y(n + 1), p.term(n));
    ModuleMap a_to_p = n <= g - 1 ? ModuleMap::identity(p.term(n)) : ModuleMap::zero(y(n), p.term(n));
    tau2.emplace(n, block_map(parts, {p.term(n)}, {{f.tau.at(n), a_to_p, b_to_p}}, alg));
    alpha.emplace(n, block_map({t.term(n)}, parts, {{ModuleMap::identity(t.term(n))}, {std::nullopt}, {std::nullopt}}, alg));
  }
  ChainComplex t2 = build_complex(alg, lo, std::move(terms), std::move(diffs));
  // block_map builds the source sum itself; rebase the maps onto the stored terms.
  std::map<int, ModuleMap> tau_r, alpha_r;
  for (auto& [n, m] : tau2) tau_r.emplace(n, ModuleMap(t2.term(n), m.target(), m.components()));
  for (auto& [n, m] : alpha) alpha_r.emplace(n, ModuleMap(t.term(n), t2.term(n), m.components()));
  FCompleteResolution out{t2, p, ChainMap(t2, p, std::move(tau_r)), f.threshold};
  return {out, ChainMap(t, t2, std::move(alpha_r))};
}

}  // namespace dpd
