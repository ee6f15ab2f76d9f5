#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dpd/repmod.hpp"

namespace dpd {

struct NotAComplex : Error {
  int degree;
  NotAComplex(const std::string& what, int d) : Error(what), degree(d) {}
};
struct NotCommutative : Error {
  using Error::Error;
};

/// Integers extended by -inf and +inf.
struct ExtInt {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  long value = 0;

  static ExtInt neg_inf() { return {Kind::NegInf, 0}; }
  static ExtInt pos_inf() { return {Kind::PosInf, 0}; }
  static ExtInt of(long v) { return {Kind::Finite, v}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_neg_inf() const { return kind == Kind::NegInf; }
  bool is_pos_inf() const { return kind == Kind::PosInf; }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (a.kind != Kind::Finite) return std::strong_ordering::equal;
    return a.value <=> b.value;
  }
  ExtInt operator+(long k) const { return is_finite() ? of(value + k) : *this; }
  ExtInt operator-(long k) const { return is_finite() ? of(value - k) : *this; }
  ExtInt operator-() const {
    if (is_neg_inf()) return pos_inf();
    if (is_pos_inf()) return neg_inf();
    return of(-value);
  }

  std::string to_string() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "+inf";
    return std::to_string(value);
  }
};

inline ExtInt max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }
inline ExtInt min(const ExtInt& a, const ExtInt& b) { return a < b ? a : b; }

inline Residue sign(long i, Residue p) { return (i % 2 != 0) ? p - 1 : 1; }

/// Bounded complex of representations, differential of degree -1.
/// Terms are stored on [lo, hi]; everything outside is zero.
class ChainComplex {
 public:
  ChainComplex() = default;

  /// diffs[i] is the differential out of degree lo + 1 + i.
  ChainComplex(AlgebraPtr alg, int lo, std::vector<Representation> terms, std::vector<ModuleMap> diffs) {
    auto impl = std::make_shared<Impl>();
    impl->alg = alg;
    impl->zero = Representation::zero(alg);
    impl->zero_map = ModuleMap::zero(impl->zero, impl->zero);
    impl->lo = lo;
    impl->hi = lo + static_cast<int>(terms.size()) - 1;
    if (terms.empty()) {
      impl->lo = 0;
      impl->hi = -1;
    }
    for (const auto& t : terms)
      if (t.algebra() != alg) throw AlgebraMismatch("complex terms over different algebras");
    if (!terms.empty() && diffs.size() + 1 != terms.size()) throw DimensionMismatch("complex needs one differential between adjacent terms");
    impl->terms = std::move(terms);
    if (!impl->terms.empty()) {
      impl->diffs.push_back(ModuleMap::zero(impl->terms.front(), impl->zero));
      for (auto& d : diffs) impl->diffs.push_back(std::move(d));
      impl->diffs.push_back(ModuleMap::zero(impl->zero, impl->terms.back()));
    }
    impl_ = std::move(impl);
  }

  static ChainComplex zero(const AlgebraPtr& alg) { return {alg, 0, {}, {}}; }

  const AlgebraPtr& algebra() const { return impl_->alg; }
  Residue p() const { return impl_->alg->p(); }
  int lo() const { return impl_->lo; }
  int hi() const { return impl_->hi; }
  bool empty_range() const { return impl_->lo > impl_->hi; }

  const Representation& term(int n) const {
    if (n < lo() || n > hi()) return impl_->zero;
    return impl_->terms[n - lo()];
  }

  /// delta_n: C_n -> C_{n-1}.
  const ModuleMap& differential(int n) const {
    if (empty_range() || n < lo() || n > hi() + 1) return impl_->zero_map;
    return impl_->diffs[n - lo()];
  }

  /// Highest and lowest degrees carrying a nonzero term; nullopt for the zero complex.
  std::optional<int> top() const {
    for (int n = hi(); n >= lo(); --n)
      if (!term(n).is_zero()) return n;
    return std::nullopt;
  }
  std::optional<int> bottom() const {
    for (int n = lo(); n <= hi(); ++n)
      if (!term(n).is_zero()) return n;
    return std::nullopt;
  }
  bool is_zero() const { return !top().has_value(); }

  /// Same complex with zero terms stripped from both ends.
  ChainComplex trimmed() const {
    auto t = top(), b = bottom();
    if (!t) return zero(algebra());
    std::vector<Representation> terms;
    std::vector<ModuleMap> diffs;
    for (int n = *b; n <= *t; ++n) {
      terms.push_back(term(n));
      if (n > *b) diffs.push_back(differential(n));
    }
    return {algebra(), *b, std::move(terms), std::move(diffs)};
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (a.algebra() != b.algebra()) return false;
    const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int n = lo; n <= hi + 1; ++n) {
      if (!(a.term(n) == b.term(n)) && !(a.term(n).is_zero() && b.term(n).is_zero())) return false;
      if (!(a.differential(n) == b.differential(n))) return false;
    }
    return true;
  }

 private:
  struct Impl {
    AlgebraPtr alg;
    Representation zero;
    ModuleMap zero_map;
    int lo = 0, hi = -1;
    std::vector<Representation> terms;
    std::vector<ModuleMap> diffs;  // index n - lo for n in [lo, hi + 1]
  };
  std::shared_ptr<const Impl> impl_;
};

/// Validated construction: shapes, arrow compatibility and delta delta = 0.
inline ChainComplex build_complex(const AlgebraPtr& alg, int lo, std::vector<Representation> terms,
                                  std::vector<ModuleMap> diffs) {
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    const int n = lo + 1 + static_cast<int>(i);
    if (!(diffs[i].source() == terms[i + 1]) || !(diffs[i].target() == terms[i]))
      throw NotAComplex("differential at degree " + std::to_string(n) + " does not connect the given terms", n);
    if (!diffs[i].commutes()) throw NotAComplex("differential at degree " + std::to_string(n) + " is not a module map", n);
  }
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
    if (!compose(diffs[i], diffs[i + 1]).is_zero()) {
      const int n = lo + 2 + static_cast<int>(i);
      throw NotAComplex("d o d is nonzero at degree " + std::to_string(n), n);
    }
  return {alg, lo, std::move(terms), std::move(diffs)};
}

inline ChainComplex stalk(const Representation& m, int n) { return {m.algebra(), n, {m}, {}}; }

inline ChainComplex shift(const ChainComplex& c, int i) {
  if (c.empty_range()) return c;
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  const Residue s = sign(i, c.p());
  for (int n = c.lo(); n <= c.hi(); ++n) {
    terms.push_back(c.term(n));
    if (n > c.lo()) diffs.push_back(c.differential(n).scaled(s));
  }
  return {c.algebra(), c.lo() + i, std::move(terms), std::move(diffs)};
}

/// Degreewise direct sum.
inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (a.algebra() != b.algebra()) throw AlgebraMismatch("complexes over different algebras");
  if (a.empty_range()) return b;
  if (b.empty_range()) return a;
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(direct_sum(a.term(n), b.term(n)));
    if (n > lo) diffs.push_back(direct_sum(a.differential(n), b.differential(n)));
  }
  return {a.algebra(), lo, std::move(terms), std::move(diffs)};
}

/// Subcomplex of degrees in [from, to] (hard truncation on both sides).
inline ChainComplex window(const ChainComplex& c, int from, int to) {
  from = std::max(from, c.lo());
  to = std::min(to, c.hi());
  if (from > to) return ChainComplex::zero(c.algebra());
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  for (int n = from; n <= to; ++n) {
    terms.push_back(c.term(n));
    if (n > from) diffs.push_back(c.differential(n));
  }
  return {c.algebra(), from, std::move(terms), std::move(diffs)};
}

/// Degrees >= n.
inline ChainComplex hard_below(const ChainComplex& c, int n) { return window(c, n, c.hi()); }
/// Degrees <= n.
inline ChainComplex hard_above(const ChainComplex& c, int n) { return window(c, c.lo(), n); }

inline QuotientModule cokernel_at(const ChainComplex& c, int n) { return cokernel(c.differential(n + 1)); }

/// 0 -> Coker(delta_{n+1}) -> C_{n-1} -> C_{n-2} -> ...
inline ChainComplex soft_above(const ChainComplex& c, int n) {
  auto q = cokernel_at(c, n);
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  const int lo = std::min(c.lo(), n);
  for (int k = lo; k < n; ++k) {
    terms.push_back(c.term(k));
    if (k > lo) diffs.push_back(c.differential(k));
  }
  terms.push_back(q.module);
  if (n > lo) diffs.push_back(factor_through_quotient(c.differential(n), q.projection));
  return {c.algebra(), lo, std::move(terms), std::move(diffs)};
}

enum class TruncMode { HardAbove, HardBelow, SoftAbove };

inline ChainComplex truncate(const ChainComplex& c, int n, TruncMode mode) {
  switch (mode) {
    case TruncMode::HardAbove:
      return hard_above(c, n);
    case TruncMode::HardBelow:
      return hard_below(c, n);
    case TruncMode::SoftAbove:
      return soft_above(c, n);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyData {
  Submodule cycles;        // Z_n inside C_n
  QuotientModule classes;  // Z_n -> H_n
};

inline HomologyData homology_data(const ChainComplex& c, int n) {
  Submodule z = kernel(c.differential(n));
  ModuleMap b = factor_through_sub(c.differential(n + 1), z.inclusion);
  return {z, cokernel(b)};
}

inline Representation homology(const ChainComplex& c, int n) { return homology_data(c, n).classes.module; }

struct HomologyProfile {
  int lo = 0;
  std::vector<Representation> groups;  // degrees lo, lo+1, ...
  ExtInt hsup = ExtInt::neg_inf();
  ExtInt hinf = ExtInt::pos_inf();

  bool exact() const { return hsup.is_neg_inf(); }
};

inline HomologyProfile homology_profile(const ChainComplex& c) {
  HomologyProfile h;
  h.lo = c.lo();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    h.groups.push_back(homology(c, n));
    if (!h.groups.back().is_zero()) {
      if (h.hinf.is_pos_inf()) h.hinf = ExtInt::of(n);
      h.hsup = ExtInt::of(n);
    }
  }
  return h;
}

inline bool is_exact(const ChainComplex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (!homology(c, n).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Chain maps and homotopies

class ChainMap {
 public:
  ChainMap() = default;
  /// maps[n] for n in the source's storage range; missing degrees are zero.
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, ModuleMap> maps)
      : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
    if (source_.algebra() != target_.algebra()) throw AlgebraMismatch("chain map between complexes over different algebras");
    for (int n = source_.lo(); n <= source_.hi(); ++n) {
      auto it = maps_.find(n);
      if (it == maps_.end()) {
        maps_.emplace(n, ModuleMap::zero(source_.term(n), target_.term(n)));
      } else if (!(it->second.source() == source_.term(n)) || !(it->second.target() == target_.term(n))) {
        throw DimensionMismatch("chain map component at degree " + std::to_string(n) + " has the wrong endpoints");
      }
    }
    for (auto it = maps_.begin(); it != maps_.end();)
      it = (it->first < source_.lo() || it->first > source_.hi()) ? maps_.erase(it) : std::next(it);
  }

  static ChainMap zero(const ChainComplex& s, const ChainComplex& t) { return {s, t, {}}; }
  static ChainMap identity(const ChainComplex& c) {
    std::map<int, ModuleMap> m;
    for (int n = c.lo(); n <= c.hi(); ++n) m.emplace(n, ModuleMap::identity(c.term(n)));
    return {c, c, std::move(m)};
  }

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }

  ModuleMap at(int n) const {
    auto it = maps_.find(n);
    if (it != maps_.end()) return it->second;
    return ModuleMap::zero(source_.term(n), target_.term(n));
  }

  /// f_{n-1} delta_n = delta_n f_n for every n.
  bool commutes() const {
    const int lo = std::min(source_.lo(), target_.lo()), hi = std::max(source_.hi(), target_.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
      if (source_.term(n).is_zero() && source_.term(n - 1).is_zero()) continue;
      if (!(compose(at(n - 1), source_.differential(n)) == compose(target_.differential(n), at(n)))) return false;
    }
    return true;
  }

 private:
  ChainComplex source_, target_;
  std::map<int, ModuleMap> maps_;
};

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::map<int, ModuleMap> m;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n) m.emplace(n, compose(g.at(n), f.at(n)));
  return {f.source(), g.target(), std::move(m)};
}

inline ChainMap operator-(const ChainMap& a, const ChainMap& b) {
  std::map<int, ModuleMap> m;
  for (int n = a.source().lo(); n <= a.source().hi(); ++n) m.emplace(n, a.at(n) - b.at(n));
  return {a.source(), a.target(), std::move(m)};
}

/// s_n: X_n -> Y_{n+1} with f - g = delta s + s delta.
struct Homotopy {
  ChainMap f, g;
  std::map<int, ModuleMap> s;
  /// Lowest degree where the identity is claimed; a window cut below it leaves lower degrees open.
  std::optional<int> from;

  ModuleMap at(int n) const {
    auto it = s.find(n);
    if (it != s.end()) return it->second;
    return ModuleMap::zero(f.source().term(n), f.target().term(n + 1));
  }

  bool verify() const {
    const auto& x = f.source();
    const auto& y = f.target();
    for (int n = from.value_or(x.lo()); n <= x.hi(); ++n) {
      ModuleMap lhs = f.at(n) - g.at(n);
      ModuleMap rhs = compose(y.differential(n + 1), at(n)) + compose(at(n - 1), x.differential(n));
      if (!(lhs == rhs)) return false;
    }
    return true;
  }
};

/// Map induced on H_n.
inline ModuleMap homology_map(const ChainMap& f, int n) {
  HomologyData hx = homology_data(f.source(), n), hy = homology_data(f.target(), n);
  ModuleMap zx_to_y = compose(f.at(n), hx.cycles.inclusion);
  ModuleMap zx_to_zy = factor_through_sub(zx_to_y, hy.cycles.inclusion);
  ModuleMap zx_to_hy = compose(hy.classes.projection, zx_to_zy);
  return factor_through_quotient(zx_to_hy, hx.classes.projection);
}

inline bool is_quasi_iso(const ChainMap& f) {
  const int lo = std::min(f.source().lo(), f.target().lo()), hi = std::max(f.source().hi(), f.target().hi());
  for (int n = lo; n <= hi; ++n)
    if (!homology_map(f, n).is_iso()) return false;
  return true;
}

/// Quasi-isomorphism test restricted to degrees <= top (for truncated resolutions).
inline bool is_quasi_iso_through(const ChainMap& f, int top) {
  const int lo = std::min(f.source().lo(), f.target().lo());
  for (int n = lo; n <= top; ++n)
    if (!homology_map(f, n).is_iso()) return false;
  return true;
}

/// Cone(f)_n = X_{n-1} + Y_n, delta(x, y) = (-delta x, f x + delta y).
inline ChainComplex mapping_cone(const ChainMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& alg = x.algebra();
  int lo = y.lo(), hi = y.hi();
  if (!x.empty_range()) {
    lo = y.empty_range() ? x.lo() + 1 : std::min(lo, x.lo() + 1);
    hi = y.empty_range() ? x.hi() + 1 : std::max(hi, x.hi() + 1);
  }
  if (lo > hi) return ChainComplex::zero(alg);
  std::vector<Representation> terms;
  std::vector<ModuleMap> diffs;
  for (int n = lo; n <= hi; ++n) {
    terms.push_back(direct_sum(x.term(n - 1), y.term(n)));
    if (n > lo)
      diffs.push_back(block_map({x.term(n - 1), y.term(n)}, {x.term(n - 2), y.term(n - 1)},
                                {{x.differential(n - 1).negated(), std::nullopt}, {f.at(n - 1), y.differential(n)}}, alg));
  }
  return {alg, lo, std::move(terms), std::move(diffs)};
}

// ---------------------------------------------------------------------------
// Graded vector complexes and Hom complexes

/// Complex of F_p-vector spaces: dims per degree, differentials degree l -> l-1.
class GradedVectorComplex {
 public:
  GradedVectorComplex() = default;
  GradedVectorComplex(Residue p, int lo, std::vector<std::size_t> dims, std::vector<FpMatrix> diffs)
      : p_(p), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {}

  Residue p() const { return p_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int l) const { return (l < lo() || l > hi()) ? 0 : dims_[l - lo_]; }

  /// delta_l: degree l -> degree l-1.
  FpMatrix differential(int l) const {
    if (l <= lo() || l > hi()) return FpMatrix(p_, dim(l - 1), dim(l));
    return diffs_[l - lo_ - 1];
  }

  std::size_t homology_dim(int l) const {
    return dim(l) - rank(differential(l)) - rank(differential(l + 1));
  }

  bool is_complex() const {
    for (int l = lo() + 2; l <= hi(); ++l)
      if (!(differential(l - 1) * differential(l)).is_zero()) return false;
    return true;
  }

  ExtInt hinf() const {
    for (int l = lo(); l <= hi(); ++l)
      if (homology_dim(l)) return ExtInt::of(l);
    return ExtInt::pos_inf();
  }
  ExtInt hsup() const {
    for (int l = hi(); l >= lo(); --l)
      if (homology_dim(l)) return ExtInt::of(l);
    return ExtInt::neg_inf();
  }

 private:
  Residue p_ = 2;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<FpMatrix> diffs_;  // index l - lo - 1 for l in (lo, hi]
};

/// Hom(P, A)_l = sum_q Hom(P_q, A_{q+l}); (delta phi)_q = delta^A phi_q - (-1)^l phi_{q-1} delta^P_q.
inline GradedVectorComplex hom_complex(const ChainComplex& pc, const ChainComplex& ac) {
  if (pc.algebra() != ac.algebra()) throw AlgebraMismatch("complexes over different algebras");
  const Residue p = pc.p();
  if (pc.empty_range() || ac.empty_range()) return {p, 0, {}, {}};
  const int lo = ac.lo() - pc.hi(), hi = ac.hi() - pc.lo();
  // spaces[l][q] = Hom(P_q, A_{q+l})
  std::map<std::pair<int, int>, HomSpace> spaces;
  std::vector<std::size_t> dims;
  std::map<std::pair<int, int>, std::size_t> offset;
  for (int l = lo; l <= hi; ++l) {
    std::size_t d = 0;
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      auto& h = spaces.emplace(std::make_pair(l, q), HomSpace(pc.term(q), ac.term(q + l))).first->second;
      offset[{l, q}] = d;
      d += h.dim();
    }
    dims.push_back(d);
  }
  std::vector<FpMatrix> diffs;
  for (int l = lo + 1; l <= hi; ++l) {
    FpMatrix m(p, dims[l - 1 - lo], dims[l - lo]);
    const Residue s = sign(l, p);
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      const auto& src = spaces.at({l, q});
      for (std::size_t j = 0; j < src.dim(); ++j) {
        const ModuleMap& phi = src.basis()[j];
        const std::size_t col = offset.at({l, q}) + j;
        // delta^A phi lands in Hom(P_q, A_{q+l-1})
        const auto& t1 = spaces.at({l - 1, q});
        if (t1.dim()) m.add_block(offset.at({l - 1, q}), col, t1.coordinates(compose(ac.differential(q + l), phi)));
        // -(-1)^l phi delta^P_{q+1} lands in Hom(P_{q+1}, A_{q+l})
        if (q + 1 <= pc.hi()) {
          const auto& t2 = spaces.at({l - 1, q + 1});
          if (t2.dim())
            m.add_block(offset.at({l - 1, q + 1}), col,
                        t2.coordinates(compose(phi, pc.differential(q + 1))).scaled(p - s));
        }
      }
    }
    diffs.push_back(std::move(m));
  }
  GradedVectorComplex out(p, lo, std::move(dims), std::move(diffs));
  if (!out.is_complex()) throw Error("internal: Hom complex differential does not square to zero");
  return out;
}

// ---------------------------------------------------------------------------
// Commutative algebras: module-valued Hom and tensor

inline void require_commutative(const AlgebraPtr& alg) {
  if (alg->vertices() != 1 || !alg->is_commutative()) throw NotCommutative("operation requires a commutative algebra");
}

/// Hom_A(M, N) with the A-action (x phi)(m) = x phi(m).
struct HomModule {
  Representation module;
  HomSpace space;
};

inline HomModule hom_module(const Representation& m, const Representation& n) {
  require_commutative(m.algebra());
  HomSpace h(m, n);
  std::vector<FpMatrix> arrows;
  const auto& alg = m.algebra();
  for (int a = 0; a < alg->num_arrows(); ++a) {
    FpMatrix mat(m.p(), h.dim(), h.dim());
    for (std::size_t j = 0; j < h.dim(); ++j) {
      std::vector<FpMatrix> c;
      for (int v = 0; v < alg->vertices(); ++v) c.push_back(n.arrow(a) * h.basis()[j].at(v));
      mat.set_block(0, j, h.coordinates(ModuleMap(m, n, std::move(c))));
    }
    arrows.push_back(std::move(mat));
  }
  return {Representation(alg, {h.dim()}, std::move(arrows)), h};
}

/// Module map Hom(M, N) -> Hom(M', N'), phi |-> post * phi * pre, for pre: M' -> M and post: N -> N'.
inline ModuleMap hom_module_map(const HomModule& from, const HomModule& to, const ModuleMap& pre, const ModuleMap& post) {
  FpMatrix mat(from.module.p(), to.space.dim(), from.space.dim());
  for (std::size_t j = 0; j < from.space.dim(); ++j)
    mat.set_block(0, j, to.space.coordinates(compose(post, compose(from.space.basis()[j], pre))));
  return {from.module, to.module, {mat}};
}

/// Module-valued Hom complex over a commutative algebra, same grading and signs as hom_complex.
inline ChainComplex hom_module_complex(const ChainComplex& pc, const ChainComplex& ac) {
  const auto& alg = pc.algebra();
  require_commutative(alg);
  if (pc.empty_range() || ac.empty_range()) return ChainComplex::zero(alg);
  const Residue p = pc.p();
  const int lo = ac.lo() - pc.hi(), hi = ac.hi() - pc.lo();
  std::map<std::pair<int, int>, HomModule> parts;
  std::vector<Representation> terms;
  for (int l = lo; l <= hi; ++l) {
    std::vector<Representation> summands;
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      auto& hm = parts.emplace(std::make_pair(l, q), hom_module(pc.term(q), ac.term(q + l))).first->second;
      summands.push_back(hm.module);
    }
    terms.push_back(direct_sum(summands, alg));
  }
  std::vector<ModuleMap> diffs;
  for (int l = lo + 1; l <= hi; ++l) {
    std::vector<Representation> srcs, tgts;
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      srcs.push_back(parts.at({l, q}).module);
      tgts.push_back(parts.at({l - 1, q}).module);
    }
    const std::size_t nq = srcs.size();
    std::vector<std::vector<std::optional<ModuleMap>>> blocks(nq, std::vector<std::optional<ModuleMap>>(nq));
    const Residue s = sign(l, p);
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      const std::size_t j = q - pc.lo();
      const auto& from = parts.at({l, q});
      blocks[j][j] = hom_module_map(from, parts.at({l - 1, q}), ModuleMap::identity(pc.term(q)), ac.differential(q + l));
      if (q + 1 <= pc.hi())
        blocks[j + 1][j] = hom_module_map(from, parts.at({l - 1, q + 1}), pc.differential(q + 1),
                                          ModuleMap::identity(ac.term(q + l)))
                               .scaled(p - s);
    }
    diffs.push_back(block_map(srcs, tgts, blocks, alg));
  }
  return build_complex(alg, lo, std::move(terms), std::move(diffs));
}

/// M tensor_A N over a commutative algebra, presented as a quotient of M tensor_k N.
struct TensorModule {
  Representation module;
  FpMatrix projection;     // from M (x)_k N
  FpMatrix right_inverse;  // back into M (x)_k N
};

inline TensorModule tensor_modules(const Representation& m, const Representation& n) {
  require_commutative(m.algebra());
  require_same_algebra(m, n);
  const auto& alg = m.algebra();
  const Residue p = m.p();
  const std::size_t dm = m.dim(0), dn = n.dim(0);
  FpMatrix im = FpMatrix::identity(p, dm), in = FpMatrix::identity(p, dn);
  std::vector<FpMatrix> arrows, rels;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    arrows.push_back(kronecker(m.arrow(a), in));
    rels.push_back(arrows.back() - kronecker(im, n.arrow(a)));
  }
  Representation v(alg, {dm * dn}, arrows, false);
  auto q = quotient_by_span(v, {column_space(hstack(rels, p, dm * dn))});
  const FpMatrix& proj = q.projection.at(0);
  FpMatrix rinv = proj.rows() ? *solve_linear(proj, FpMatrix::identity(p, proj.rows())) : FpMatrix(p, dm * dn, 0);
  return {q.module, proj, rinv};
}

inline ModuleMap tensor_maps(const TensorModule& from, const TensorModule& to, const ModuleMap& f, const ModuleMap& g) {
  FpMatrix mat = to.projection * kronecker(f.at(0), g.at(0)) * from.right_inverse;
  return {from.module, to.module, {mat}};
}

/// (P (x) A)_l = sum_q P_q (x) A_{l-q}, delta(x (x) y) = delta x (x) y + (-1)^q x (x) delta y.
inline ChainComplex tensor_complex(const ChainComplex& pc, const ChainComplex& ac) {
  const auto& alg = pc.algebra();
  require_commutative(alg);
  if (pc.algebra() != ac.algebra()) throw AlgebraMismatch("complexes over different algebras");
  if (pc.empty_range() || ac.empty_range()) return ChainComplex::zero(alg);
  const Residue p = pc.p();
  const int lo = pc.lo() + ac.lo(), hi = pc.hi() + ac.hi();
  std::map<std::pair<int, int>, TensorModule> parts;
  std::vector<Representation> terms;
  for (int l = lo; l <= hi; ++l) {
    std::vector<Representation> summands;
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      auto& t = parts.emplace(std::make_pair(l, q), tensor_modules(pc.term(q), ac.term(l - q))).first->second;
      summands.push_back(t.module);
    }
    terms.push_back(direct_sum(summands, alg));
  }
  std::vector<ModuleMap> diffs;
  for (int l = lo + 1; l <= hi; ++l) {
    std::vector<Representation> srcs, tgts;
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      srcs.push_back(parts.at({l, q}).module);
      tgts.push_back(parts.at({l - 1, q}).module);
    }
    const std::size_t nq = srcs.size();
    std::vector<std::vector<std::optional<ModuleMap>>> blocks(nq, std::vector<std::optional<ModuleMap>>(nq));
    for (int q = pc.lo(); q <= pc.hi(); ++q) {
      const std::size_t j = q - pc.lo();
      const auto& from = parts.at({l, q});
      blocks[j][j] = tensor_maps(from, parts.at({l - 1, q}), ModuleMap::identity(pc.term(q)), ac.differential(l - q))
                         .scaled(sign(q, p));
      if (q - 1 >= pc.lo())
        blocks[j - 1][j] = tensor_maps(from, parts.at({l - 1, q - 1}), pc.differential(q), ModuleMap::identity(ac.term(l - q)));
    }
    diffs.push_back(block_map(srcs, tgts, blocks, alg));
  }
  return build_complex(alg, lo, std::move(terms), std::move(diffs));
}

inline std::string describe(const ChainComplex& c) {
  if (c.empty_range()) return "0";
  std::string s;
  for (int n = c.hi(); n >= c.lo(); --n) s += (n < c.hi() ? " -> " : "") + std::to_string(n) + ":" + describe(c.term(n));
  return s;
}

}  // namespace dpd
