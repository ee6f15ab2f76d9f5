#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpd/algebra.hpp"
#include "dpd/exactla.hpp"

namespace dpd {

struct InvalidModule : Error {
  using Error::Error;
};
struct UndeterminedIso : Error {
  using Error::Error;
};

/// A finitely generated left module given as a quiver representation.
/// Cheap to copy: the data is shared and immutable.
class Representation {
 public:
  Representation() = default;

  Representation(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<FpMatrix> arrows, bool validate = true) {
    auto impl = std::make_shared<Impl>();
    impl->alg = std::move(alg);
    impl->dims = std::move(dims);
    impl->arrows = std::move(arrows);
    impl_ = std::move(impl);
    if (validate) check();
  }

  static Representation zero(const AlgebraPtr& alg) {
    std::vector<FpMatrix> arrows;
    for (int a = 0; a < alg->num_arrows(); ++a) arrows.emplace_back(alg->p(), 0, 0);
    return {alg, std::vector<std::size_t>(alg->vertices(), 0), std::move(arrows), false};
  }

  const AlgebraPtr& algebra() const { return impl_->alg; }
  Residue p() const { return impl_->alg->p(); }
  const std::vector<std::size_t>& dims() const { return impl_->dims; }
  std::size_t dim(int v) const { return impl_->dims[v]; }
  std::size_t total_dim() const { return std::accumulate(dims().begin(), dims().end(), std::size_t{0}); }
  bool is_zero() const { return total_dim() == 0; }
  const FpMatrix& arrow(int a) const { return impl_->arrows[a]; }
  const std::vector<FpMatrix>& arrows() const { return impl_->arrows; }
  bool valid() const { return impl_ != nullptr; }

  /// Matrix of the basis element b, from M_{source b} to M_{target b}.
  const FpMatrix& action(int b) const {
    std::call_once(impl_->actions_once, [this] {
      const auto& alg = *impl_->alg;
      for (std::size_t i = 0; i < alg.dim(); ++i) impl_->actions.push_back(path_action(alg.element(i)));
    });
    return impl_->actions[b];
  }

  FpMatrix path_action(const BasisElement& b) const {
    FpMatrix m = FpMatrix::identity(p(), dim(b.source));
    for (int a : b.path) m = arrow(a) * m;
    return m;
  }

  FpMatrix path_action(const Path& path, int source) const {
    FpMatrix m = FpMatrix::identity(p(), dim(source));
    for (int a : path) m = arrow(a) * m;
    return m;
  }

  bool satisfies_relations() const {
    for (const auto& rel : algebra()->relations()) {
      const auto& q = algebra()->quiver();
      const int s = q.arrows[rel.front().path.front()].source;
      const int t = q.arrows[rel.front().path.back()].target;
      FpMatrix acc(p(), dim(t), dim(s));
      for (const auto& term : rel) acc = acc + path_action(term.path, s).scaled(static_cast<Residue>(term.coeff));
      if (!acc.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    if (a.impl_ == b.impl_) return true;
    return a.algebra() == b.algebra() && a.dims() == b.dims() && a.arrows() == b.arrows();
  }

 private:
  struct Impl {
    AlgebraPtr alg;
    std::vector<std::size_t> dims;
    std::vector<FpMatrix> arrows;
    mutable std::once_flag actions_once;
    mutable std::vector<FpMatrix> actions;
  };

  void check() const {
    const auto& alg = *impl_->alg;
    if (dims().size() != static_cast<std::size_t>(alg.vertices()))
      throw InvalidModule("dimension vector has " + std::to_string(dims().size()) + " entries, expected " +
                          std::to_string(alg.vertices()));
    if (arrows().size() != static_cast<std::size_t>(alg.num_arrows())) throw InvalidModule("wrong number of arrow matrices");
    for (int a = 0; a < alg.num_arrows(); ++a) {
      const auto& arr = alg.quiver().arrows[a];
      const auto& m = arrow(a);
      if (m.p() != alg.p()) throw InvalidModule("arrow '" + arr.id + "' matrix over the wrong field");
      if (m.rows() != dim(arr.target) || m.cols() != dim(arr.source))
        throw InvalidModule("arrow '" + arr.id + "' matrix has shape " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(dim(arr.target)) + "x" +
                            std::to_string(dim(arr.source)));
    }
    if (!satisfies_relations()) throw InvalidModule("representation violates a relation of the algebra");
  }

  std::shared_ptr<Impl> impl_;
};

inline void require_same_algebra(const Representation& a, const Representation& b) {
  if (a.algebra() != b.algebra()) throw AlgebraMismatch("modules over different algebras");
}

/// A homomorphism of representations: one matrix per vertex.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(Representation source, Representation target, std::vector<FpMatrix> components)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    require_same_algebra(source_, target_);
    const int nv = source_.algebra()->vertices();
    if (comps_.size() != static_cast<std::size_t>(nv)) throw DimensionMismatch("module map needs one matrix per vertex");
    for (int v = 0; v < nv; ++v)
      if (comps_[v].rows() != target_.dim(v) || comps_[v].cols() != source_.dim(v))
        throw DimensionMismatch("module map component at vertex " + std::to_string(v) + " has the wrong shape");
  }

  static ModuleMap zero(const Representation& s, const Representation& t) {
    std::vector<FpMatrix> c;
    for (int v = 0; v < s.algebra()->vertices(); ++v) c.emplace_back(s.p(), t.dim(v), s.dim(v));
    return {s, t, std::move(c)};
  }

  static ModuleMap identity(const Representation& m) {
    std::vector<FpMatrix> c;
    for (int v = 0; v < m.algebra()->vertices(); ++v) c.push_back(FpMatrix::identity(m.p(), m.dim(v)));
    return {m, m, std::move(c)};
  }

  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }
  const FpMatrix& at(int v) const { return comps_[v]; }
  const std::vector<FpMatrix>& components() const { return comps_; }

  /// target(a) * f_s == f_t * source(a) for every arrow a.
  bool commutes() const {
    const auto& alg = *source_.algebra();
    for (int a = 0; a < alg.num_arrows(); ++a) {
      const auto& arr = alg.quiver().arrows[a];
      if (!(target_.arrow(a) * comps_[arr.source] == comps_[arr.target] * source_.arrow(a))) return false;
    }
    return true;
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const FpMatrix& m) { return m.is_zero(); });
  }

  bool is_iso() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const FpMatrix& m) { return is_invertible(m); });
  }

  bool is_injective() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const FpMatrix& m) { return rank(m) == m.cols(); });
  }

  bool is_surjective() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const FpMatrix& m) { return rank(m) == m.rows(); });
  }

  std::optional<ModuleMap> inverse() const {
    std::vector<FpMatrix> inv;
    for (const auto& m : comps_) {
      auto i = dpd::inverse(m);
      if (!i) return std::nullopt;
      inv.push_back(std::move(*i));
    }
    return ModuleMap(target_, source_, std::move(inv));
  }

  ModuleMap scaled(Residue s) const {
    auto c = comps_;
    for (auto& m : c) m = m.scaled(s);
    return {source_, target_, std::move(c)};
  }

  ModuleMap negated() const { return scaled(source_.p() - 1); }

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) { return a.comps_ == b.comps_; }

 private:
  Representation source_;
  Representation target_;
  std::vector<FpMatrix> comps_;
};

/// g after f.
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  std::vector<FpMatrix> c;
  for (std::size_t v = 0; v < f.components().size(); ++v) c.push_back(g.at(static_cast<int>(v)) * f.at(static_cast<int>(v)));
  return {f.source(), g.target(), std::move(c)};
}

inline ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  std::vector<FpMatrix> c;
  for (std::size_t v = 0; v < a.components().size(); ++v) c.push_back(a.at(static_cast<int>(v)) + b.at(static_cast<int>(v)));
  return {a.source(), a.target(), std::move(c)};
}

inline ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) { return a + b.negated(); }

// ---------------------------------------------------------------------------
// Standard modules

inline Representation simple_module(const AlgebraPtr& alg, int v) {
  std::vector<std::size_t> dims(alg->vertices(), 0);
  dims[v] = 1;
  std::vector<FpMatrix> arrows;
  for (const auto& a : alg->quiver().arrows) arrows.emplace_back(alg->p(), dims[a.target], dims[a.source]);
  return {alg, dims, std::move(arrows)};
}

/// P_v = A e_v.
inline Representation indecomposable_projective(const AlgebraPtr& alg, int v) {
  std::vector<std::size_t> dims;
  for (int w = 0; w < alg->vertices(); ++w) dims.push_back(alg->between(v, w).size());
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) arrows.push_back(alg->projective_action(v, a));
  return {alg, dims, std::move(arrows), false};
}

inline std::vector<Representation> indecomposable_projectives(const AlgebraPtr& alg) {
  std::vector<Representation> out;
  for (int v = 0; v < alg->vertices(); ++v) out.push_back(indecomposable_projective(alg, v));
  return out;
}

// ---------------------------------------------------------------------------
// Direct sums and block maps

inline Representation direct_sum(const std::vector<Representation>& parts, const AlgebraPtr& alg) {
  std::vector<std::size_t> dims(alg->vertices(), 0);
  for (const auto& m : parts) {
    if (m.algebra() != alg) throw AlgebraMismatch("direct sum over different algebras");
    for (int v = 0; v < alg->vertices(); ++v) dims[v] += m.dim(v);
  }
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const auto& arr = alg->quiver().arrows[a];
    FpMatrix m(alg->p(), dims[arr.target], dims[arr.source]);
    std::size_t r = 0, c = 0;
    for (const auto& part : parts) {
      m.set_block(r, c, part.arrow(a));
      r += part.dim(arr.target);
      c += part.dim(arr.source);
    }
    arrows.push_back(std::move(m));
  }
  return {alg, dims, std::move(arrows), false};
}

inline Representation direct_sum(const Representation& a, const Representation& b) {
  require_same_algebra(a, b);
  return direct_sum({a, b}, a.algebra());
}

/// Block map between direct sums; blocks[i][j] maps sources[j] to targets[i] (nullopt = 0).
inline ModuleMap block_map(const std::vector<Representation>& sources, const std::vector<Representation>& targets,
                           const std::vector<std::vector<std::optional<ModuleMap>>>& blocks, const AlgebraPtr& alg) {
  Representation src = direct_sum(sources, alg), tgt = direct_sum(targets, alg);
  std::vector<FpMatrix> comps;
  for (int v = 0; v < alg->vertices(); ++v) {
    FpMatrix m(alg->p(), tgt.dim(v), src.dim(v));
    std::size_t r = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < sources.size(); ++j) {
        if (blocks[i][j]) m.set_block(r, c, blocks[i][j]->at(v));
        c += sources[j].dim(v);
      }
      r += targets[i].dim(v);
    }
    comps.push_back(std::move(m));
  }
  return {src, tgt, std::move(comps)};
}

inline ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g) {
  return block_map({f.source(), g.source()}, {f.target(), g.target()}, {{f, std::nullopt}, {std::nullopt, g}},
                   f.source().algebra());
}

// ---------------------------------------------------------------------------
// Hom spaces

/// Column vector of all entries, vertex by vertex, each component row-major.
inline FpMatrix flatten(const ModuleMap& f) {
  std::size_t n = 0;
  for (const auto& m : f.components()) n += m.rows() * m.cols();
  FpMatrix v(f.source().p(), n, 1);
  std::size_t k = 0;
  for (const auto& m : f.components())
    for (Residue x : m.data()) v(k++, 0) = x;
  return v;
}

inline ModuleMap unflatten(const FpMatrix& v, const Representation& s, const Representation& t) {
  std::vector<FpMatrix> comps;
  std::size_t k = 0;
  for (int w = 0; w < s.algebra()->vertices(); ++w) {
    FpMatrix m(s.p(), t.dim(w), s.dim(w));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = v(k++, 0);
    comps.push_back(std::move(m));
  }
  return {s, t, std::move(comps)};
}

/// Basis of Hom_A(M, N) with coordinate lookup.
class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(const Representation& m, const Representation& n) : source_(m), target_(n) {
    require_same_algebra(m, n);
    const auto& alg = *m.algebra();
    const int nv = alg.vertices();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    const std::size_t unknowns = offset[nv];
    std::size_t eqs = 0;
    for (const auto& a : alg.quiver().arrows) eqs += n.dim(a.target) * m.dim(a.source);
    FpMatrix sys(m.p(), eqs, unknowns);
    std::size_t row = 0;
    for (int a = 0; a < alg.num_arrows(); ++a) {
      const auto& arr = alg.quiver().arrows[a];
      const int s = arr.source, t = arr.target;
      const auto& na = n.arrow(a);
      const auto& ma = m.arrow(a);
      // (N_a f_s - f_t M_a)(i, j) = 0
      for (std::size_t i = 0; i < n.dim(t); ++i)
        for (std::size_t j = 0; j < m.dim(s); ++j, ++row) {
          for (std::size_t k = 0; k < n.dim(s); ++k)
            if (Residue c = na(i, k)) {
              auto& e = sys(row, offset[s] + k * m.dim(s) + j);
              e = add_mod(e, c, m.p());
            }
          for (std::size_t k = 0; k < m.dim(t); ++k)
            if (Residue c = ma(k, j)) {
              auto& e = sys(row, offset[t] + i * m.dim(t) + k);
              e = sub_mod(e, c, m.p());
            }
        }
    }
    FpMatrix ker = kernel(sys);
    for (std::size_t c = 0; c < ker.cols(); ++c) basis_.push_back(unflatten(ker.col(c), m, n));
    solver_ = CoordinateSolver(std::move(ker));
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<ModuleMap>& basis() const { return basis_; }
  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }

  ModuleMap element(const FpMatrix& coords) const {
    return unflatten(solver_.basis() * coords, source_, target_);
  }

  FpMatrix coordinates(const ModuleMap& f) const {
    auto c = solver_.coordinates(flatten(f));
    if (!c) throw Error("map is not a module homomorphism between the expected modules");
    return *c;
  }

 private:
  Representation source_, target_;
  std::vector<ModuleMap> basis_;
  CoordinateSolver solver_;
};

inline HomSpace hom_space(const Representation& m, const Representation& n) { return {m, n}; }

// ---------------------------------------------------------------------------
// Kernels, images, cokernels

struct Submodule {
  Representation module;
  ModuleMap inclusion;
};

struct QuotientModule {
  Representation module;
  ModuleMap projection;
};

/// Submodule spanned vertexwise by the given columns (which must already be arrow-stable).
inline Submodule submodule_from_basis(const Representation& m, std::vector<FpMatrix> basis) {
  const auto& alg = m.algebra();
  std::vector<std::size_t> dims;
  for (const auto& b : basis) dims.push_back(b.cols());
  std::vector<CoordinateSolver> solvers;
  for (const auto& b : basis) solvers.emplace_back(b);
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const auto& arr = alg->quiver().arrows[a];
    auto c = solvers[arr.target].coordinates(m.arrow(a) * basis[arr.source]);
    if (!c) throw Error("subspace is not a submodule");
    arrows.push_back(std::move(*c));
  }
  Representation sub(alg, dims, std::move(arrows), false);
  return {sub, ModuleMap(sub, m, std::move(basis))};
}

inline Submodule kernel(const ModuleMap& f) {
  std::vector<FpMatrix> basis;
  for (const auto& c : f.components()) basis.push_back(kernel(c));
  return submodule_from_basis(f.source(), std::move(basis));
}

inline Submodule image(const ModuleMap& f) {
  std::vector<FpMatrix> basis;
  for (const auto& c : f.components()) basis.push_back(column_space(c));
  return submodule_from_basis(f.target(), std::move(basis));
}

/// Quotient of m by the subspace spanned vertexwise by the columns of `sub` (arrow-stable).
inline QuotientModule quotient_by_span(const Representation& m, const std::vector<FpMatrix>& sub) {
  const auto& alg = m.algebra();
  const Residue p = m.p();
  std::vector<FpMatrix> proj, right_inv;
  std::vector<std::size_t> dims;
  for (int v = 0; v < alg->vertices(); ++v) {
    FpMatrix q = sub[v].cols() ? left_kernel(sub[v]) : FpMatrix::identity(p, m.dim(v));
    if (q.cols() != m.dim(v)) q = FpMatrix(p, 0, m.dim(v));
    dims.push_back(q.rows());
    auto r = q.rows() ? solve_linear(q, FpMatrix::identity(p, q.rows())) : std::optional<FpMatrix>(FpMatrix(p, m.dim(v), 0));
    right_inv.push_back(std::move(*r));
    proj.push_back(std::move(q));
  }
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const auto& arr = alg->quiver().arrows[a];
    arrows.push_back(proj[arr.target] * m.arrow(a) * right_inv[arr.source]);
  }
  Representation quo(alg, dims, std::move(arrows), false);
  return {quo, ModuleMap(m, quo, std::move(proj))};
}

inline QuotientModule cokernel(const ModuleMap& f) {
  std::vector<FpMatrix> sub;
  for (const auto& c : f.components()) sub.push_back(column_space(c));
  return quotient_by_span(f.target(), sub);
}

struct KernelCokernel {
  Submodule ker;
  QuotientModule coker;
};

inline KernelCokernel kernel_cokernel(const ModuleMap& f) { return {kernel(f), cokernel(f)}; }

/// The unique map h with f = h * q, for q a surjection whose kernel f kills.
inline ModuleMap factor_through_quotient(const ModuleMap& f, const ModuleMap& q) {
  std::vector<FpMatrix> comps;
  for (std::size_t v = 0; v < f.components().size(); ++v) {
    const auto& qv = q.at(static_cast<int>(v));
    auto r = qv.rows() ? solve_linear(qv, FpMatrix::identity(qv.p(), qv.rows())) : std::optional<FpMatrix>(FpMatrix(qv.p(), qv.cols(), 0));
    comps.push_back(f.at(static_cast<int>(v)) * *r);
  }
  ModuleMap h(q.target(), f.target(), std::move(comps));
  if (!(compose(h, q) == f)) throw Error("map does not factor through the quotient");
  return h;
}

/// The unique map h with f = i * h, for i injective and im f inside im i.
inline ModuleMap factor_through_sub(const ModuleMap& f, const ModuleMap& i) {
  std::vector<FpMatrix> comps;
  for (std::size_t v = 0; v < f.components().size(); ++v) {
    CoordinateSolver s(i.at(static_cast<int>(v)));
    auto c = s.coordinates(f.at(static_cast<int>(v)));
    if (!c) throw Error("map does not factor through the submodule");
    comps.push_back(std::move(*c));
  }
  return {f.source(), i.source(), std::move(comps)};
}

// ---------------------------------------------------------------------------
// Free modules and projective covers

/// Direct sum of indecomposable projectives P_{gens[0]} + P_{gens[1]} + ...
/// Coordinates at vertex w are generator-major, each block in between(v_g, w) order.
class FreeModule {
 public:
  FreeModule() = default;
  FreeModule(AlgebraPtr alg, std::vector<int> gens) : alg_(std::move(alg)), gens_(std::move(gens)) {
    const int nv = alg_->vertices();
    offsets_.assign(gens_.size() * nv, 0);
    std::vector<std::size_t> dims(nv, 0);
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (int w = 0; w < nv; ++w) {
        offsets_[g * nv + w] = dims[w];
        dims[w] += alg_->between(gens_[g], w).size();
      }
    std::vector<FpMatrix> arrows;
    for (int a = 0; a < alg_->num_arrows(); ++a) {
      const auto& arr = alg_->quiver().arrows[a];
      FpMatrix m(alg_->p(), dims[arr.target], dims[arr.source]);
      for (std::size_t g = 0; g < gens_.size(); ++g)
        m.set_block(offsets_[g * nv + arr.target], offsets_[g * nv + arr.source], alg_->projective_action(gens_[g], a));
      arrows.push_back(std::move(m));
    }
    rep_ = Representation(alg_, std::move(dims), std::move(arrows), false);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<int>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  const Representation& rep() const { return rep_; }
  std::size_t offset(std::size_t g, int w) const { return offsets_[g * alg_->vertices() + w]; }
  /// Coordinate of generator g (the idempotent e_{v_g} in its own block).
  std::size_t generator_coord(std::size_t g) const {
    const int v = gens_[g];
    return offset(g, v) + alg_->position(alg_->idempotent(v));
  }

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> m(alg_->vertices(), 0);
    for (int v : gens_) ++m[v];
    return m;
  }

 private:
  AlgebraPtr alg_;
  std::vector<int> gens_;
  std::vector<std::size_t> offsets_;
  Representation rep_;
};

/// The map F -> M sending generator g to images[g] (a column in M_{v_g}).
inline ModuleMap map_from_free(const FreeModule& f, const Representation& m, const std::vector<FpMatrix>& images) {
  const auto& alg = *f.algebra();
  std::vector<FpMatrix> comps;
  for (int w = 0; w < alg.vertices(); ++w) {
    FpMatrix c(m.p(), m.dim(w), f.rep().dim(w));
    for (std::size_t g = 0; g < f.rank(); ++g) {
      const int v = f.generators()[g];
      const auto& paths = alg.between(v, w);
      for (std::size_t k = 0; k < paths.size(); ++k) c.set_block(0, f.offset(g, w) + k, m.action(paths[k]) * images[g]);
    }
    comps.push_back(std::move(c));
  }
  return {f.rep(), m, std::move(comps)};
}

/// Value of a map out of a free module on generator g.
inline FpMatrix generator_image(const FreeModule& f, const ModuleMap& phi, std::size_t g) {
  return phi.at(f.generators()[g]).col(f.generator_coord(g));
}

/// Radical subspace rad(M)_v: the span of all arrow images landing in v.
inline std::vector<FpMatrix> radical_span(const Representation& m) {
  const auto& alg = *m.algebra();
  std::vector<FpMatrix> out;
  for (int v = 0; v < alg.vertices(); ++v) {
    std::vector<FpMatrix> parts;
    for (int a = 0; a < alg.num_arrows(); ++a)
      if (alg.quiver().arrows[a].target == v) parts.push_back(m.arrow(a));
    out.push_back(column_space(hstack(parts, m.p(), m.dim(v))));
  }
  return out;
}

struct Cover {
  Representation top;
  FreeModule free;
  ModuleMap map;  // free.rep() -> M, surjective with kernel in the radical
  std::vector<FpMatrix> generators;
};

/// Top M/rad M and the projective cover built from lifts of a basis of the top.
/// Lifts are standard basis vectors completing a basis of the radical, chosen left to right.
inline Cover top_and_cover(const Representation& m) {
  const auto& alg = m.algebra();
  const Residue p = m.p();
  auto rad = radical_span(m);
  std::vector<int> gens;
  std::vector<FpMatrix> images;
  std::vector<std::size_t> top_dims;
  for (int v = 0; v < alg->vertices(); ++v) {
    const std::size_t n = m.dim(v);
    FpMatrix aug = hstack({rad[v], FpMatrix::identity(p, n)}, p, n);
    std::size_t count = 0;
    if (n) {
      auto r = rref_rank(aug);
      for (auto c : r.pivots)
        if (c >= rad[v].cols()) {
          gens.push_back(v);
          FpMatrix e(p, n, 1);
          e(c - rad[v].cols(), 0) = 1;
          images.push_back(std::move(e));
          ++count;
        }
    }
    top_dims.push_back(count);
  }
  std::vector<FpMatrix> zero_arrows;
  for (const auto& a : alg->quiver().arrows) zero_arrows.emplace_back(p, top_dims[a.target], top_dims[a.source]);
  Representation top(alg, top_dims, std::move(zero_arrows), false);
  FreeModule free(alg, gens);
  ModuleMap cover = map_from_free(free, m, images);
  return {top, free, cover, images};
}

inline Representation syzygy(const Representation& m) { return kernel(top_and_cover(m).map).module; }

inline bool is_projective(const Representation& m) {
  return top_and_cover(m).free.rep().total_dim() == m.total_dim();
}

// ---------------------------------------------------------------------------
// Isomorphism testing

struct IsoOptions {
  std::uint64_t seed = 0;
  int random_draws = 64;
  double exhaustive_limit = 1 << 20;
};

/// An invertible homomorphism M -> N, or nullopt when none exists.
/// Throws UndeterminedIso when random search fails and the Hom space is too large to enumerate.
inline std::optional<ModuleMap> is_isomorphic(const Representation& m, const Representation& n, IsoOptions opt = {}) {
  require_same_algebra(m, n);
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.is_zero()) return ModuleMap::zero(m, n);
  if (top_and_cover(m).top.dims() != top_and_cover(n).top.dims()) return std::nullopt;
  HomSpace h(m, n);
  if (h.dim() == 0) return std::nullopt;
  if (HomSpace(n, m).dim() != h.dim()) return std::nullopt;
  if (HomSpace(m, m).dim() != HomSpace(n, n).dim()) return std::nullopt;

  const Residue p = m.p();
  const std::size_t d = h.dim();
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Residue> coef(0, p - 1);
  for (int draw = 0; draw < opt.random_draws; ++draw) {
    FpMatrix c(p, d, 1);
    for (std::size_t i = 0; i < d; ++i) c(i, 0) = coef(rng);
    ModuleMap f = h.element(c);
    if (f.is_iso()) return f;
  }
  double space = 1;
  for (std::size_t i = 0; i < d; ++i) space *= p;
  if (space > opt.exhaustive_limit)
    throw UndeterminedIso("isomorphism search undetermined: Hom space of size " + std::to_string(p) + "^" +
                          std::to_string(d) + " exceeds the enumeration limit");
  // Odometer over all coefficient vectors, updating the running sum one basis map at a time.
  std::vector<FpMatrix> flat;
  for (const auto& b : h.basis()) flat.push_back(flatten(b));
  FpMatrix cur(p, flat.front().rows(), 1);
  std::vector<Residue> digits(d, 0);
  while (true) {
    std::size_t i = 0;
    for (; i < d; ++i) {
      cur = cur + flat[i];
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
    if (i == d) break;
    ModuleMap f = unflatten(cur, m, n);
    if (f.is_iso()) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Minimal projective resolutions

/// Minimal projective resolution of M, materialized on demand.
/// syzygy(i) is the i-th syzygy, term(i) its projective cover P_i.
class MinimalResolution {
 public:
  explicit MinimalResolution(Representation m) { syz_.push_back(std::move(m)); }

  const Representation& module() const { return syz_.front(); }

  void extend_to(std::size_t i) {
    while (covers_.size() <= i) {
      Cover c = top_and_cover(syz_.back());
      Submodule k = kernel(c.map);
      covers_.push_back(std::move(c));
      incl_.push_back(k.inclusion);
      syz_.push_back(k.module);
    }
  }

  const Representation& syzygy(std::size_t i) {
    if (i > 0) extend_to(i - 1);
    return syz_[i];
  }
  const FreeModule& term(std::size_t i) {
    extend_to(i);
    return covers_[i].free;
  }
  const ModuleMap& cover(std::size_t i) {
    extend_to(i);
    return covers_[i].map;
  }
  /// Omega^{i+1} -> P_i.
  const ModuleMap& inclusion(std::size_t i) {
    extend_to(i);
    return incl_[i];
  }
  /// P_i -> P_{i-1}, i >= 1.
  ModuleMap differential(std::size_t i) {
    extend_to(i);
    return compose(incl_[i - 1], covers_[i].map);
  }

  std::size_t materialized() const { return covers_.size(); }

 private:
  std::deque<Representation> syz_;
  std::deque<Cover> covers_;
  std::deque<ModuleMap> incl_;
};

/// Hom(d, N) for d: F1 -> F0 between free modules, as a matrix from
/// Hom(F0, N) = sum_g N_{v_g} to Hom(F1, N) = sum_g N_{v_g}.
inline FpMatrix hom_free_pullback(const FreeModule& f1, const FreeModule& f0, const ModuleMap& d, const Representation& n) {
  const auto& alg = *n.algebra();
  auto block_start = [&](const FreeModule& f) {
    std::vector<std::size_t> s(f.rank() + 1, 0);
    for (std::size_t g = 0; g < f.rank(); ++g) s[g + 1] = s[g] + n.dim(f.generators()[g]);
    return s;
  };
  auto r0 = block_start(f1), c0 = block_start(f0);
  FpMatrix out(n.p(), r0.back(), c0.back());
  for (std::size_t g = 0; g < f1.rank(); ++g) {
    const int v = f1.generators()[g];
    FpMatrix img = generator_image(f1, d, g);  // element of (F0)_v
    for (std::size_t h = 0; h < f0.rank(); ++h) {
      const int u = f0.generators()[h];
      const auto& paths = alg.between(u, v);
      FpMatrix blk(n.p(), n.dim(v), n.dim(u));
      for (std::size_t k = 0; k < paths.size(); ++k)
        if (Residue c = img(f0.offset(h, v) + k, 0)) blk = blk + n.action(paths[k]).scaled(c);
      out.set_block(r0[g], c0[h], blk);
    }
  }
  return out;
}

/// Ext^i(M, N) as the cohomology of Hom(P_., N) at degree i.
/// incoming: Hom(P_{i-1}, N) -> Hom(P_i, N); outgoing: Hom(P_i, N) -> Hom(P_{i+1}, N).
struct ExtWitness {
  int degree = 0;
  std::size_t dim = 0;
  FpMatrix incoming;
  FpMatrix outgoing;

  std::size_t recompute() const { return outgoing.cols() - rank(outgoing) - rank(incoming); }
};

inline ExtWitness ext_from_resolution(MinimalResolution& res, const Representation& n, int i) {
  require_same_algebra(res.module(), n);
  const Residue p = n.p();
  ExtWitness w;
  w.degree = i;
  res.extend_to(i + 1);
  const FreeModule& fi = res.term(i);
  const FreeModule& fnext = res.term(i + 1);
  w.outgoing = hom_free_pullback(fnext, fi, res.differential(i + 1), n);
  if (i == 0) {
    w.incoming = FpMatrix(p, w.outgoing.cols(), 0);
  } else {
    w.incoming = hom_free_pullback(fi, res.term(i - 1), res.differential(i), n);
  }
  w.dim = w.recompute();
  return w;
}

inline ExtWitness ext_group(const Representation& m, const Representation& n, int i) {
  MinimalResolution res(m);
  return ext_from_resolution(res, n, i);
}

// ---------------------------------------------------------------------------
// Duality (-)* = Hom(-, A)

/// Right multiplication by basis element c (from s to t): P_t -> P_s, x |-> x c.
inline ModuleMap right_multiplication(const AlgebraPtr& alg, int c) {
  const auto& el = alg->element(c);
  const int s = el.source, t = el.target;
  Representation pt = indecomposable_projective(alg, t), ps = indecomposable_projective(alg, s);
  std::vector<FpMatrix> comps;
  for (int w = 0; w < alg->vertices(); ++w) {
    const auto& from = alg->between(t, w);
    FpMatrix m(alg->p(), alg->between(s, w).size(), from.size());
    for (std::size_t k = 0; k < from.size(); ++k)
      for (auto [j, coef] : alg->product(from[k], c)) m(alg->position(j), k) = coef;
    comps.push_back(std::move(m));
  }
  return {pt, ps, std::move(comps)};
}

/// M* over the opposite algebra: vertex v carries Hom(M, P_v).
struct DualModule {
  Representation module;
  std::vector<HomSpace> spaces;
};

inline DualModule dual_star(const Representation& m) {
  const auto& alg = m.algebra();
  auto op = alg->opposite();
  DualModule d;
  std::vector<std::size_t> dims;
  for (int v = 0; v < alg->vertices(); ++v) {
    d.spaces.emplace_back(m, indecomposable_projective(alg, v));
    dims.push_back(d.spaces.back().dim());
  }
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const auto& arr = alg->quiver().arrows[a];
    ModuleMap rho = right_multiplication(alg, alg->arrow_element(a));  // P_t -> P_s
    const auto& from = d.spaces[arr.target];
    const auto& to = d.spaces[arr.source];
    FpMatrix mat(alg->p(), to.dim(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) mat.set_block(0, j, to.coordinates(compose(rho, from.basis()[j])));
    arrows.push_back(std::move(mat));
  }
  d.module = Representation(op, dims, std::move(arrows));
  return d;
}

/// f*: N* -> M* for f: M -> N.
inline ModuleMap dual_map(const ModuleMap& f, const DualModule& dm, const DualModule& dn) {
  std::vector<FpMatrix> comps;
  for (std::size_t v = 0; v < dm.spaces.size(); ++v) {
    const auto& from = dn.spaces[v];
    const auto& to = dm.spaces[v];
    FpMatrix mat(f.source().p(), to.dim(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) mat.set_block(0, j, to.coordinates(compose(from.basis()[j], f)));
    comps.push_back(std::move(mat));
  }
  return {dn.module, dm.module, std::move(comps)};
}

/// The evaluation map M -> M**, m |-> (f |-> f(m)).
inline ModuleMap double_dual_map(const Representation& m, const DualModule& dm, const DualModule& ddm) {
  const auto& alg = m.algebra();
  if (ddm.module.algebra() != alg) throw AlgebraMismatch("double dual is not over the original algebra");
  const Residue p = m.p();
  auto op = alg->opposite();
  std::vector<FpMatrix> comps;
  for (int w = 0; w < alg->vertices(); ++w) {
    Representation pw_op = indecomposable_projective(op, w);
    const auto& target_space = ddm.spaces[w];
    FpMatrix eta(p, target_space.dim(), m.dim(w));
    for (std::size_t i = 0; i < m.dim(w); ++i) {
      FpMatrix e(p, m.dim(w), 1);
      e(i, 0) = 1;
      std::vector<FpMatrix> ev;
      for (int v = 0; v < alg->vertices(); ++v) {
        const auto& hv = dm.spaces[v];
        FpMatrix col(p, alg->between(v, w).size(), hv.dim());
        for (std::size_t j = 0; j < hv.dim(); ++j) col.set_block(0, j, hv.basis()[j].at(w) * e);
        ev.push_back(std::move(col));
      }
      ModuleMap evm(dm.module, pw_op, std::move(ev));
      eta.set_block(0, i, target_space.coordinates(evm));
    }
    comps.push_back(std::move(eta));
  }
  return {m, ddm.module, std::move(comps)};
}

inline std::string describe(const Representation& m) {
  std::string s = "dims(";
  for (std::size_t v = 0; v < m.dims().size(); ++v) s += (v ? "," : "") + std::to_string(m.dim(static_cast<int>(v)));
  return s + ")";
}

}  // namespace dpd
