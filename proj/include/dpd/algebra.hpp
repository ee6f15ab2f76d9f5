#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dpd/exactla.hpp"

namespace dpd {

struct NotAdmissible : Error {
  using Error::Error;
};
struct NotFiniteDimensional : Error {
  using Error::Error;
};
struct AlgebraMismatch : Error {
  using Error::Error;
};

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
};

struct Quiver {
  int vertices = 0;
  std::vector<Arrow> arrows;

  int arrow_index(const std::string& id) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].id == id) return static_cast<int>(i);
    throw Error("unknown arrow id '" + id + "'");
  }
};

/// A path is a list of arrow indices in traversal order: {a, b} means "a then b", written ba.
using Path = std::vector<int>;

struct RelationTerm {
  long long coeff = 1;
  Path path;
};
using Relation = std::vector<RelationTerm>;

struct BasisElement {
  int source = 0;
  int target = 0;
  Path path;  // empty for the vertex idempotent e_source
};

/// Sparse vector over the algebra basis.
using SparseVec = std::vector<std::pair<int, Residue>>;

class BoundQuiverAlgebra;
using AlgebraPtr = std::shared_ptr<const BoundQuiverAlgebra>;

AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations, Residue p,
                         int length_cap = 16);

/// Finite-dimensional quotient kQ/I of a path algebra by an admissible ideal.
///
/// Products follow function composition: product(i, j) = b_i * b_j is "b_j then b_i".
/// Left modules are quiver representations; P_v = A e_v is spanned by paths starting at v.
class BoundQuiverAlgebra : public std::enable_shared_from_this<BoundQuiverAlgebra> {
 public:
  Residue p() const { return p_; }
  const Quiver& quiver() const { return quiver_; }
  int vertices() const { return quiver_.vertices; }
  int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(int i) const { return basis_[i]; }

  /// Least N with (arrow ideal)^N contained in the relation ideal.
  int nilpotency_index() const { return nilpotency_; }

  int idempotent(int v) const { return idempotent_[v]; }
  int arrow_element(int a) const { return arrow_element_[a]; }

  const SparseVec& product(int i, int j) const { return table_[i * basis_.size() + j]; }

  /// Basis indices of e_w A e_v (paths from v to w), in increasing index order.
  const std::vector<int>& between(int v, int w) const { return between_[v * vertices() + w]; }
  /// Position of basis element i inside between(source, target).
  int position(int i) const { return position_[i]; }

  /// Matrix of the arrow a acting on P_v, from (P_v)_{source a} to (P_v)_{target a}.
  const FpMatrix& projective_action(int v, int a) const { return proj_action_[v * num_arrows() + a]; }

  bool is_commutative() const {
    if (vertices() != 1) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (product(i, j) != product(j, i)) return false;
    return true;
  }

  /// The opposite algebra: arrows reversed, same basis indices with reversed paths.
  /// opposite()->opposite() is this very object.
  AlgebraPtr opposite() const {
    std::lock_guard lock(op_mutex_);
    if (auto back = op_back_.lock()) return back;
    if (!op_cache_) {
      auto op = std::shared_ptr<BoundQuiverAlgebra>(new BoundQuiverAlgebra());
      op->p_ = p_;
      op->quiver_.vertices = quiver_.vertices;
      for (const auto& a : quiver_.arrows) op->quiver_.arrows.push_back({a.id, a.target, a.source});
      for (const auto& rel : relations_) {
        Relation r;
        for (const auto& t : rel) r.push_back({t.coeff, Path(t.path.rbegin(), t.path.rend())});
        op->relations_.push_back(std::move(r));
      }
      for (const auto& b : basis_) op->basis_.push_back({b.target, b.source, Path(b.path.rbegin(), b.path.rend())});
      op->nilpotency_ = nilpotency_;
      op->idempotent_ = idempotent_;
      op->arrow_element_ = arrow_element_;
      const std::size_t n = basis_.size();
      op->table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) op->table_[i * n + j] = table_[j * n + i];
      op->finish();
      op->op_back_ = shared_from_this();
      op_cache_ = op;
    }
    return op_cache_;
  }

  /// Same presentation and structure constants.
  bool same_presentation(const BoundQuiverAlgebra& o) const {
    if (p_ != o.p_ || quiver_.vertices != o.quiver_.vertices || basis_.size() != o.basis_.size()) return false;
    if (quiver_.arrows.size() != o.quiver_.arrows.size()) return false;
    for (std::size_t a = 0; a < quiver_.arrows.size(); ++a) {
      const auto &x = quiver_.arrows[a], &y = o.quiver_.arrows[a];
      if (x.id != y.id || x.source != y.source || x.target != y.target) return false;
    }
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].path != o.basis_[i].path || basis_[i].source != o.basis_[i].source) return false;
    return table_ == o.table_;
  }

  std::string element_name(int i) const {
    const auto& b = basis_[i];
    if (b.path.empty()) return "e" + std::to_string(b.source);
    std::string s;
    for (auto it = b.path.rbegin(); it != b.path.rend(); ++it) s += quiver_.arrows[*it].id;
    return s;
  }

  /// (xy)z = x(yz) on every basis triple, and the idempotents act as a unit.
  bool check_associative() const {
    const int n = static_cast<int>(dim());
    auto mul = [&](const SparseVec& x, int k, bool left) {
      std::map<int, Residue> acc;
      for (auto [i, c] : x)
        for (auto [j, d] : left ? product(k, i) : product(i, k)) acc[j] = add_mod(acc[j], mul_mod(c, d, p_), p_);
      SparseVec out;
      for (auto [j, c] : acc)
        if (c) out.emplace_back(j, c);
      return out;
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& ij = product(i, j);
        for (int k = 0; k < n; ++k)
          if (mul(ij, k, false) != mul(product(j, k), i, true)) return false;
      }
    for (int i = 0; i < n; ++i) {
      SparseVec unit_left, unit_right;
      for (int v = 0; v < vertices(); ++v) {
        for (auto t : product(idempotent(v), i)) unit_left.push_back(t);
        for (auto t : product(i, idempotent(v))) unit_right.push_back(t);
      }
      SparseVec self{{i, 1}};
      if (unit_left != self || unit_right != self) return false;
    }
    return true;
  }

 private:
  BoundQuiverAlgebra() = default;
  friend AlgebraPtr build_algebra(const Quiver&, const std::vector<Relation>&, Residue, int);

  void finish() {
    const int nv = vertices(), na = num_arrows();
    between_.assign(nv * nv, {});
    position_.assign(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      auto& bucket = between_[basis_[i].source * nv + basis_[i].target];
      position_[i] = static_cast<int>(bucket.size());
      bucket.push_back(static_cast<int>(i));
    }
    proj_action_.assign(nv * na, {});
    for (int v = 0; v < nv; ++v)
      for (int a = 0; a < na; ++a) {
        const auto& arr = quiver_.arrows[a];
        const auto& from = between(v, arr.source);
        const auto& to = between(v, arr.target);
        FpMatrix m(p_, to.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c)
          for (auto [k, coef] : product(arrow_element_[a], from[c])) m(position_[k], c) = coef;
        proj_action_[v * na + a] = std::move(m);
      }
  }

  Residue p_ = 2;
  Quiver quiver_;
  std::vector<Relation> relations_;
  std::vector<BasisElement> basis_;
  std::vector<SparseVec> table_;
  std::vector<int> idempotent_;
  std::vector<int> arrow_element_;
  std::vector<std::vector<int>> between_;
  std::vector<int> position_;
  std::vector<FpMatrix> proj_action_;
  int nilpotency_ = 1;

  mutable std::mutex op_mutex_;
  mutable AlgebraPtr op_cache_;
  mutable std::weak_ptr<const BoundQuiverAlgebra> op_back_;
};

namespace detail {

inline int path_source(const Quiver& q, const Path& p) { return q.arrows[p.front()].source; }
inline int path_target(const Quiver& q, const Path& p) { return q.arrows[p.back()].target; }

inline constexpr std::size_t kMaxPathsPerLength = 200000;

}  // namespace detail

/// Builds kQ/I. Relations must be homogeneous (all paths of one length >= 2) and parallel.
/// The basis is computed length by length: the degree-L part of I is spanned by the
/// relations of length L and by arrow multiples of the degree-(L-1) part, and the
/// non-pivot paths of its RREF are kept as basis paths.
inline AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations, Residue p,
                                int length_cap) {
  check_prime(p);
  if (quiver.vertices <= 0) throw Error("quiver needs at least one vertex");
  for (const auto& a : quiver.arrows)
    if (a.source < 0 || a.target < 0 || a.source >= quiver.vertices || a.target >= quiver.vertices)
      throw Error("arrow '" + a.id + "' has an endpoint outside the vertex range");
  for (std::size_t i = 0; i < quiver.arrows.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (quiver.arrows[i].id == quiver.arrows[j].id) throw Error("duplicate arrow id '" + quiver.arrows[i].id + "'");

  std::map<int, std::vector<Relation>> by_length;
  std::vector<Relation> kept;
  for (const auto& rel : relations) {
    Relation r;
    for (const auto& t : rel) {
      if (t.path.size() < 2)
        throw NotAdmissible("relation term of length " + std::to_string(t.path.size()) + " (need >= 2)");
      for (std::size_t k = 0; k < t.path.size(); ++k) {
        if (t.path[k] < 0 || t.path[k] >= static_cast<int>(quiver.arrows.size())) throw Error("relation uses unknown arrow");
        if (k && quiver.arrows[t.path[k - 1]].target != quiver.arrows[t.path[k]].source)
          throw Error("relation term is not a path");
      }
      if (reduce(t.coeff, p) != 0) r.push_back({static_cast<long long>(reduce(t.coeff, p)), t.path});
    }
    if (r.empty()) continue;
    for (const auto& t : r) {
      if (t.path.size() != r.front().path.size())
        throw NotAdmissible("relation mixes path lengths; only length-homogeneous relations are supported");
      if (detail::path_source(quiver, t.path) != detail::path_source(quiver, r.front().path) ||
          detail::path_target(quiver, t.path) != detail::path_target(quiver, r.front().path))
        throw NotAdmissible("relation terms are not parallel");
    }
    by_length[static_cast<int>(r.front().path.size())].push_back(r);
    kept.push_back(std::move(r));
  }

  auto alg = std::shared_ptr<BoundQuiverAlgebra>(new BoundQuiverAlgebra());
  alg->p_ = p;
  alg->quiver_ = quiver;
  alg->relations_ = kept;

  // Reduction of each path of length < N to a combination of basis paths.
  std::map<Path, SparseVec> reduction;
  for (int v = 0; v < quiver.vertices; ++v) {
    alg->idempotent_.push_back(static_cast<int>(alg->basis_.size()));
    alg->basis_.push_back({v, v, {}});
  }

  std::vector<Path> prev_paths;   // all paths of length L-1
  FpMatrix prev_ideal;            // rows: basis of I_{L-1} in prev_paths coordinates
  int nilpotency = -1;
  for (int L = 1;; ++L) {
    if (L > length_cap)
      throw NotFiniteDimensional("nonzero paths survive at length cap " + std::to_string(length_cap));
    std::vector<Path> paths;
    if (L == 1) {
      for (std::size_t a = 0; a < quiver.arrows.size(); ++a) paths.push_back({static_cast<int>(a)});
    } else {
      for (const auto& q : prev_paths)
        for (std::size_t a = 0; a < quiver.arrows.size(); ++a)
          if (quiver.arrows[a].source == detail::path_target(quiver, q)) {
            Path r = q;
            r.push_back(static_cast<int>(a));
            paths.push_back(std::move(r));
          }
    }
    if (paths.size() > detail::kMaxPathsPerLength)
      throw NotFiniteDimensional("path space at length " + std::to_string(L) + " exceeds the engine limit");
    if (paths.empty()) {
      nilpotency = L;
      break;
    }
    std::map<Path, std::size_t> index;
    for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;

    std::vector<std::vector<Residue>> gens;
    auto add_gen = [&](const std::map<std::size_t, Residue>& g) {
      std::vector<Residue> row(paths.size(), 0);
      bool nz = false;
      for (auto [k, c] : g) {
        row[k] = c;
        nz |= c != 0;
      }
      if (nz) gens.push_back(std::move(row));
    };
    for (std::size_t r = 0; r < prev_ideal.rows(); ++r)
      for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
        std::map<std::size_t, Residue> left, right;
        for (std::size_t k = 0; k < prev_paths.size(); ++k) {
          const Residue c = prev_ideal(r, k);
          if (!c) continue;
          const auto& q = prev_paths[k];
          if (quiver.arrows[a].source == detail::path_target(quiver, q)) {
            Path x = q;
            x.push_back(static_cast<int>(a));
            left[index.at(x)] = c;
          }
          if (quiver.arrows[a].target == detail::path_source(quiver, q)) {
            Path x{static_cast<int>(a)};
            x.insert(x.end(), q.begin(), q.end());
            right[index.at(x)] = c;
          }
        }
        add_gen(left);
        add_gen(right);
      }
    for (const auto& rel : by_length[L]) {
      std::map<std::size_t, Residue> g;
      for (const auto& t : rel) g[index.at(t.path)] = add_mod(g[index.at(t.path)], static_cast<Residue>(t.coeff), p);
      add_gen(g);
    }
    FpMatrix ideal(p, gens.size(), paths.size());
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (std::size_t c = 0; c < paths.size(); ++c) ideal(r, c) = gens[r][c];
    RrefResult rr = gens.empty() ? RrefResult{ideal, 0, {}} : rref_rank(ideal);
    if (rr.rank == paths.size()) {
      nilpotency = L;
      break;
    }
    std::vector<char> is_pivot(paths.size(), 0);
    for (auto c : rr.pivots) is_pivot[c] = 1;
    std::map<std::size_t, int> basis_of;
    for (std::size_t c = 0; c < paths.size(); ++c)
      if (!is_pivot[c]) {
        basis_of[c] = static_cast<int>(alg->basis_.size());
        alg->basis_.push_back({detail::path_source(quiver, paths[c]), detail::path_target(quiver, paths[c]), paths[c]});
        reduction[paths[c]] = {{basis_of[c], 1}};
      }
    for (std::size_t i = 0; i < rr.rank; ++i) {
      SparseVec red;
      for (auto [c, b] : basis_of)
        if (Residue x = rr.rref(i, c)) red.emplace_back(b, neg_mod(x, p));
      reduction[paths[rr.pivots[i]]] = std::move(red);
    }
    prev_paths = std::move(paths);
    prev_ideal = rr.rref.block(0, 0, rr.rank, prev_paths.size());
  }
  alg->nilpotency_ = nilpotency;

  for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
    int found = -1;
    for (std::size_t i = 0; i < alg->basis_.size(); ++i)
      if (alg->basis_[i].path == Path{static_cast<int>(a)}) found = static_cast<int>(i);
    if (found < 0) throw NotAdmissible("arrow '" + quiver.arrows[a].id + "' vanishes in the quotient");
    alg->arrow_element_.push_back(found);
  }

  const std::size_t n = alg->basis_.size();
  alg->table_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& bi = alg->basis_[i];
      const auto& bj = alg->basis_[j];
      if (bj.target != bi.source) continue;
      if (bi.path.empty()) {
        alg->table_[i * n + j] = {{static_cast<int>(j), 1}};
        continue;
      }
      if (bj.path.empty()) {
        alg->table_[i * n + j] = {{static_cast<int>(i), 1}};
        continue;
      }
      Path cat = bj.path;
      cat.insert(cat.end(), bi.path.begin(), bi.path.end());
      if (static_cast<int>(cat.size()) >= nilpotency) continue;
      alg->table_[i * n + j] = reduction.at(cat);
    }
  alg->finish();
  if (!alg->check_associative()) throw Error("structure constants are not associative");
  return alg;
}

}  // namespace dpd
