#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dpd/resolutions.hpp"

namespace dpd {

struct FailedHypothesis : Error {
  using Error::Error;
};
struct CertificateReplayFailure : Error {
  using Error::Error;
};

enum class Answer { Yes, No, Undetermined };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "yes";
    case Answer::No:
      return "no";
    case Answer::Undetermined:
      return "undetermined";
  }
  return "?";
}

struct ExtEntry {
  int vertex = 0;
  ExtWitness witness;
};

/// Omega^j(N) isomorphic to Omega^k(N), j < k.
struct SyzygyCycle {
  int j = 0, k = 0;
  ModuleMap iso;
};

/// The regular module is isomorphic to D(A_A) = Hom_k(A_A, k), so A is injective on that side.
struct SelfInjectiveWitness {
  ModuleMap iso;
};

/// Ext^{>=1}(N, A) = 0, certified either by self-injectivity or by a syzygy cycle plus Ext^i = 0 for 1 <= i <= k.
struct SideCertificate {
  std::optional<SelfInjectiveWitness> self_injective;
  std::optional<SyzygyCycle> cycle;
  std::vector<ExtEntry> ext;
};

struct DpCertificate {
  bool projective = false;
  ModuleMap reflexivity;  // M -> M**
  SideCertificate left;   // for M
  SideCertificate right;  // for M* over the opposite algebra
};

struct Obstruction {
  enum class Kind { Ext, Reflexivity };
  Kind kind = Kind::Ext;
  bool right_side = false;
  int degree = 0;
  /// Ext read off a resolution of another module at degree `degree + shift` (dimension shifting).
  int shift = 0;
  std::vector<ExtEntry> ext;  // every vertex at this degree
  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& e : ext) d += e.witness.dim;
    return d;
  }
};

struct DpVerdict {
  Answer answer = Answer::Undetermined;
  std::optional<DpCertificate> certificate;
  std::optional<Obstruction> obstruction;
};

struct DpOptions {
  /// Window for the splice sanity check run on every yes; 0 disables it.
  int ta_window = -1;  // -1: use the detection window
  /// Give up on syzygies whose total dimension exceeds this.
  std::size_t max_syzygy_dim = 1024;
};

// ---------------------------------------------------------------------------
// Self-injectivity

/// k-dual of a module over the opposite algebra, as a module over the algebra.
inline Representation k_dual(const Representation& n_op, const AlgebraPtr& alg) {
  std::vector<FpMatrix> arrows;
  for (int a = 0; a < alg->num_arrows(); ++a) arrows.push_back(n_op.arrow(a).transpose());
  return {alg, n_op.dims(), std::move(arrows)};
}

inline Representation regular_module(const AlgebraPtr& alg) { return direct_sum(indecomposable_projectives(alg), alg); }

inline Representation injective_cogenerator(const AlgebraPtr& alg) {
  auto op = alg->opposite();
  std::vector<Representation> parts;
  for (int v = 0; v < alg->vertices(); ++v) parts.push_back(k_dual(indecomposable_projective(op, v), alg));
  return direct_sum(parts, alg);
}

inline std::optional<SelfInjectiveWitness> compute_self_injective(const AlgebraPtr& alg) {
  auto iso = is_isomorphic(regular_module(alg), injective_cogenerator(alg));
  if (!iso) return std::nullopt;
  return SelfInjectiveWitness{*iso};
}

inline std::optional<SelfInjectiveWitness> self_injective_witness(const AlgebraPtr& alg) {
  static std::mutex mu;
  static std::map<const BoundQuiverAlgebra*, std::pair<std::weak_ptr<const BoundQuiverAlgebra>, std::optional<SelfInjectiveWitness>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alg.get());
    if (it != cache.end() && it->second.first.lock() == alg) return it->second.second;
  }
  auto w = compute_self_injective(alg);
  std::lock_guard<std::mutex> lock(mu);
  cache[alg.get()] = {alg, w};
  return w;
}

inline bool is_self_injective(const AlgebraPtr& alg) { return self_injective_witness(alg).has_value(); }

// ---------------------------------------------------------------------------
// Ding projectivity

struct SideResult {
  std::optional<SideCertificate> certificate;
  std::optional<Obstruction> obstruction;
};

inline std::vector<ExtEntry> ext_into_projectives(MinimalResolution& res, int i) {
  std::vector<ExtEntry> out;
  const auto& alg = res.module().algebra();
  for (int v = 0; v < alg->vertices(); ++v) out.push_back({v, ext_from_resolution(res, indecomposable_projective(alg, v), i)});
  return out;
}

/// Ext^{>=1}(N, A) = 0 within the window: syzygies Omega^0 .. Omega^{window-1} are compared.
inline SideResult ext_vanishing_side(const Representation& n, int window, bool right_side, const DpOptions& opt) {
  SideResult r;
  if (auto w = self_injective_witness(n.algebra())) {
    r.certificate = SideCertificate{w, std::nullopt, {}};
    return r;
  }
  MinimalResolution res(n);
  SideCertificate cert;
  for (int k = 1; k <= window - 1; ++k) {
    if (res.syzygy(k).total_dim() > opt.max_syzygy_dim) break;
    auto ext = ext_into_projectives(res, k);
    for (const auto& e : ext)
      if (e.witness.dim != 0) {
        Obstruction ob;
        ob.right_side = right_side;
        ob.degree = k;
        ob.ext = ext;
        r.obstruction = std::move(ob);
        return r;
      }
    cert.ext.insert(cert.ext.end(), ext.begin(), ext.end());
    const Representation& omega_k = res.syzygy(k);
    for (int j = 0; j < k; ++j) {
      const Representation& omega_j = res.syzygy(j);
      if (omega_j.dims() != omega_k.dims()) continue;
      if (auto iso = is_isomorphic(omega_j, omega_k)) {
        cert.cycle = SyzygyCycle{j, k, *iso};
        r.certificate = std::move(cert);
        return r;
      }
    }
  }
  return r;
}

/// Reflexive and Ext^{>=1}(-, A) = 0 on both sides, each certified.
inline DpVerdict is_ding_projective(const Representation& m, int window, const DpOptions& opt = {});

inline TaReport splice_check(const Representation& m, int w) {
  CompleteResolution t(m);
  return check_totally_acyclic(t, w);
}

inline DpVerdict is_ding_projective(const Representation& m, int window, const DpOptions& opt) {
  DpVerdict v;
  if (is_projective(m)) {
    v.answer = Answer::Yes;
    DpCertificate c;
    c.projective = true;
    v.certificate = c;
    return v;
  }
  if (window < 2) return v;
  SideResult left = ext_vanishing_side(m, window, false, opt);
  if (left.obstruction) {
    v.answer = Answer::No;
    v.obstruction = left.obstruction;
    return v;
  }
  DualModule dm = dual_star(m);
  DualModule ddm = dual_star(dm.module);
  ModuleMap eta = double_dual_map(m, dm, ddm);
  if (!eta.is_iso()) {
    Obstruction ob;
    ob.kind = Obstruction::Kind::Reflexivity;
    v.answer = Answer::No;
    v.obstruction = ob;
    return v;
  }
  SideResult right = ext_vanishing_side(dm.module, window, true, opt);
  if (right.obstruction) {
    v.answer = Answer::No;
    v.obstruction = right.obstruction;
    return v;
  }
  if (!left.certificate || !right.certificate) return v;
  v.answer = Answer::Yes;
  v.certificate = DpCertificate{false, eta, *left.certificate, *right.certificate};
  const int tw = opt.ta_window < 0 ? window : opt.ta_window;
  if (tw > 0) {
    auto rep = splice_check(m, tw);
    if (!rep.pass()) {
      auto f = *rep.first_failure();
      throw CertificateReplayFailure("certified Ding projective module fails the " + f.kind + " check at degree " +
                                     std::to_string(f.degree) + " of its splice");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Certificate replay

inline bool inverts(const ModuleMap& f) {
  auto inv = f.inverse();
  return inv && compose(*inv, f) == ModuleMap::identity(f.source()) && compose(f, *inv) == ModuleMap::identity(f.target());
}

inline bool replay_side(const SideCertificate& c, const Representation& n) {
  if (c.self_injective) {
    const auto& iso = c.self_injective->iso;
    const auto& alg = n.algebra();
    return iso.source() == regular_module(alg) && iso.target() == injective_cogenerator(alg) && iso.commutes() &&
           inverts(iso);
  }
  if (!c.cycle) return false;
  const auto& cy = *c.cycle;
  if (cy.j < 0 || cy.j >= cy.k) return false;
  MinimalResolution res(n);
  if (!(cy.iso.source() == res.syzygy(cy.j)) || !(cy.iso.target() == res.syzygy(cy.k))) return false;
  if (!cy.iso.commutes() || !inverts(cy.iso)) return false;
  const int nv = n.algebra()->vertices();
  if (c.ext.size() != static_cast<std::size_t>(cy.k * nv)) return false;
  for (const auto& e : c.ext) {
    if (e.witness.dim != 0 || e.witness.recompute() != 0) return false;
    ExtWitness fresh = ext_from_resolution(res, indecomposable_projective(n.algebra(), e.vertex), e.witness.degree);
    if (!(fresh.incoming == e.witness.incoming) || !(fresh.outgoing == e.witness.outgoing)) return false;
  }
  for (int i = 1; i <= cy.k; ++i)
    for (int v = 0; v < nv; ++v)
      if (std::none_of(c.ext.begin(), c.ext.end(), [&](const ExtEntry& e) { return e.vertex == v && e.witness.degree == i; }))
        return false;
  return true;
}

/// Re-verifies a certificate from scratch against m.
inline bool replay(const DpCertificate& c, const Representation& m) {
  if (c.projective) return is_projective(m);
  DualModule dm = dual_star(m);
  DualModule ddm = dual_star(dm.module);
  ModuleMap eta = double_dual_map(m, dm, ddm);
  if (!(c.reflexivity.source() == m) || !(c.reflexivity == eta) || !eta.commutes() || !inverts(eta)) return false;
  return replay_side(c.left, m) && replay_side(c.right, dm.module);
}

/// Re-verifies an Ext obstruction: some Ext group is nonzero.
inline bool replay(const Obstruction& ob) {
  if (ob.kind == Obstruction::Kind::Reflexivity) return true;
  return ob.total_dim() > 0 && std::all_of(ob.ext.begin(), ob.ext.end(), [](const ExtEntry& e) {
           return e.witness.recompute() == e.witness.dim;
         });
}

/// The wrapper the splice is exposed through: refuses modules without a certificate.
inline CompleteResolution splice_complete_resolution(const Representation& g, int window) {
  auto v = is_ding_projective(g, window);
  if (v.answer != Answer::Yes)
    throw NotDingProjective(std::string("module is not certified Ding projective (") + to_string(v.answer) + ")");
  return CompleteResolution(g);
}

// ---------------------------------------------------------------------------
// Ding projective dimension

struct DpdVerdict {
  ExtInt value = ExtInt::neg_inf();
  bool undetermined = false;
  long lower_bound = 0;  // meaningful when undetermined

  /// Degree at which the certificate was found (syzygy index or cokernel degree).
  int degree = 0;
  std::optional<Representation> certified_module;
  std::optional<DpCertificate> certificate;

  std::optional<SyzygyCycle> infinity_cycle;
  std::vector<Obstruction> infinity_obstructions;

  std::optional<ChainComplex> witness;  // finite values of complexes
  std::vector<Answer> scan;

  std::string to_string() const {
    if (undetermined) return "undetermined(>=" + std::to_string(lower_bound) + ")";
    return value.to_string();
  }
  bool same_value(const DpdVerdict& o) const {
    if (undetermined || o.undetermined) return undetermined == o.undetermined && lower_bound == o.lower_bound;
    return value == o.value;
  }
};

/// Largest i in [1, window] with Ext^i(M, P_v) != 0 for some v (0 if none).
inline long ext_lower_bound(MinimalResolution& res, int window, const DpOptions& opt) {
  long b = 0;
  for (int i = 1; i <= window; ++i) {
    if (res.syzygy(i).total_dim() > opt.max_syzygy_dim) break;
    for (const auto& e : ext_into_projectives(res, i))
      if (e.witness.dim) b = i;
  }
  return b;
}

/// Least n with Omega^n(M) Ding projective.
inline DpdVerdict dpd_module(const Representation& m, int window, const DpOptions& opt = {}) {
  DpdVerdict out;
  if (m.is_zero()) return out;
  MinimalResolution res(m);
  std::vector<std::optional<Obstruction>> obstructions;
  bool all_no = true;
  for (int n = 0; n <= window; ++n) {
    const Representation& omega = res.syzygy(n);
    if (omega.total_dim() > opt.max_syzygy_dim) break;
    // A syzygy met before: the sequence is periodic from here on.
    for (int j = 0; j < n; ++j) {
      if (res.syzygy(j).dims() != omega.dims()) continue;
      if (auto iso = is_isomorphic(res.syzygy(j), omega)) {
        if (all_no) {
          out.value = ExtInt::pos_inf();
          out.infinity_cycle = SyzygyCycle{j, n, *iso};
          for (int i = j; i < n; ++i) out.infinity_obstructions.push_back(*obstructions[i]);
          return out;
        }
        n = window + 1;
        break;
      }
    }
    if (n > window) break;
    // Ext^1(Omega^n, P_v) = Ext^{n+1}(M, P_v).
    DpVerdict v;
    if (res.syzygy(n + 1).total_dim() <= opt.max_syzygy_dim) {
      auto ext = ext_into_projectives(res, n + 1);
      if (std::any_of(ext.begin(), ext.end(), [](const ExtEntry& e) { return e.witness.dim != 0; })) {
        Obstruction ob;
        ob.degree = 1;
        ob.shift = n;
        ob.ext = std::move(ext);
        v.answer = Answer::No;
        v.obstruction = std::move(ob);
      }
    }
    if (v.answer != Answer::No) v = is_ding_projective(omega, window, opt);
    out.scan.push_back(v.answer);
    obstructions.push_back(v.obstruction);
    if (v.answer == Answer::Yes) {
      if (all_no) {
        out.value = ExtInt::of(n);
        out.degree = n;
        out.certified_module = omega;
        out.certificate = v.certificate;
        return out;
      }
      break;
    }
    if (v.answer == Answer::Undetermined) all_no = false;
  }
  out.undetermined = true;
  out.value = ExtInt::pos_inf();
  out.lower_bound = ext_lower_bound(res, window, opt);
  return out;
}

/// Dpd of a bounded complex from a given projective resolution, materialized on request.
inline DpdVerdict dpd_from_resolution(const ChainComplex& x, const std::function<ChainComplex(int)>& resolution, int window,
                                      const DpOptions& opt = {}) {
  DpdVerdict out;
  HomologyProfile hp = homology_profile(x);
  if (hp.exact()) return out;
  const int h = static_cast<int>(hp.hsup.value);
  for (int n = h; n <= h + window; ++n) {
    ChainComplex p = resolution(n + 1);
    Representation c = cokernel_at(p, n).module;
    DpVerdict v = is_ding_projective(c, window, opt);
    out.scan.push_back(v.answer);
    if (v.answer == Answer::Yes) {
      out.value = ExtInt::of(n);
      out.degree = n;
      out.certified_module = c;
      out.certificate = v.certificate;
      out.witness = soft_above(p, n);
      return out;
    }
    if (v.answer == Answer::Undetermined) break;
  }
  ChainComplex p = resolution(h + 1);
  DpdVerdict mv = dpd_module(cokernel_at(p, h).module, window, opt);
  if (mv.value.is_finite() && !mv.undetermined) {
    // Found by the syzygy scan but not by the cokernel scan; recompute the witness at that degree.
    const int n = h + static_cast<int>(mv.value.value);
    ChainComplex pn = resolution(n + 1);
    Representation c = cokernel_at(pn, n).module;
    DpVerdict v = is_ding_projective(c, window, opt);
    if (v.answer != Answer::Yes) throw CertificateReplayFailure("cokernel and syzygy scans disagree");
    out.value = ExtInt::of(n);
    out.degree = n;
    out.certified_module = c;
    out.certificate = v.certificate;
    out.witness = soft_above(pn, n);
    return out;
  }
  out.value = mv.value;
  out.undetermined = mv.undetermined;
  out.lower_bound = mv.undetermined ? mv.lower_bound + h : 0;
  out.infinity_cycle = mv.infinity_cycle;
  out.infinity_obstructions = mv.infinity_obstructions;
  return out;
}

inline DpdVerdict dpd_complex(const ChainComplex& x, int window, const DpOptions& opt = {}) {
  auto tail = std::make_shared<ResolutionTail>(ResolutionTail::of_complex(x));
  return dpd_from_resolution(x, [tail](int d) { return tail->complex(d); }, window, opt);
}

/// Checks the invariants a finite verdict promises about its witness complex.
inline bool verify_witness(const DpdVerdict& v, const ChainComplex& x, int window) {
  if (!v.value.is_finite() || v.undetermined || !v.witness) return false;
  const auto& w = *v.witness;
  if (w.top() != std::optional<int>(static_cast<int>(v.value.value))) return false;
  for (int n = w.lo(); n < v.value.value; ++n)
    if (!is_projective(w.term(n))) return false;
  if (!v.certificate || !replay(*v.certificate, w.term(static_cast<int>(v.value.value)))) return false;
  (void)window;
  // Quasi-isomorphic to x: both are resolved by the same complex, compare homology degreewise.
  for (int n = std::min(w.lo(), x.lo()); n <= std::max(w.hi(), x.hi()); ++n)
    if (!is_isomorphic(homology(w, n), homology(x, n))) return false;
  return true;
}

inline bool replay_cycle(const SyzygyCycle& cy, const std::vector<Obstruction>& obs, const Representation& m) {
  if (cy.j < 0 || cy.j >= cy.k) return false;
  MinimalResolution res(m);
  if (!(cy.iso.source() == res.syzygy(cy.j)) || !(cy.iso.target() == res.syzygy(cy.k))) return false;
  if (!cy.iso.commutes() || !inverts(cy.iso)) return false;
  if (obs.size() != static_cast<std::size_t>(cy.k - cy.j)) return false;
  for (int i = cy.j; i < cy.k; ++i) {
    const auto& ob = obs[i - cy.j];
    if (!replay(ob)) return false;
    if (ob.kind == Obstruction::Kind::Reflexivity) {
      const Representation& omega = res.syzygy(i);
      DualModule d = dual_star(omega);
      if (double_dual_map(omega, d, dual_star(d.module)).is_iso()) return false;
    }
  }
  return true;
}

/// Re-verifies a module verdict from scratch. Undetermined verdicts carry nothing to replay.
inline bool replay_verdict(const DpdVerdict& v, const Representation& m) {
  if (v.undetermined) return true;
  if (v.value.is_neg_inf()) return m.is_zero();
  if (v.value.is_pos_inf()) return v.infinity_cycle && replay_cycle(*v.infinity_cycle, v.infinity_obstructions, m);
  if (!v.certificate || !v.certified_module) return false;
  MinimalResolution res(m);
  return res.syzygy(static_cast<int>(v.value.value)) == *v.certified_module && replay(*v.certificate, *v.certified_module);
}

inline bool replay_verdict(const DpdVerdict& v, const ChainComplex& x, int window) {
  if (v.undetermined) return true;
  if (v.value.is_neg_inf()) return is_exact(x);
  if (v.value.is_pos_inf()) {
    HomologyProfile hp = homology_profile(x);
    if (hp.exact()) return false;
    auto tail = ResolutionTail::of_complex(x);
    const int h = static_cast<int>(hp.hsup.value);
    return v.infinity_cycle &&
           replay_cycle(*v.infinity_cycle, v.infinity_obstructions, cokernel_at(tail.complex(h + 1), h).module);
  }
  return verify_witness(v, x, window);
}

/// Least n >= hsup with C_n(P) projective, searched up to hsup + window; -inf for exact complexes.
inline std::optional<ExtInt> projective_dimension(const ChainComplex& x, int window) {
  HomologyProfile hp = homology_profile(x);
  if (hp.exact()) return ExtInt::neg_inf();
  auto tail = ResolutionTail::of_complex(x);
  const int h = static_cast<int>(hp.hsup.value);
  for (int n = h; n <= h + window; ++n)
    if (is_projective(cokernel_at(tail.complex(n + 1), n).module)) return ExtInt::of(n);
  return std::nullopt;
}

inline std::optional<ExtInt> projective_dimension(const Representation& m, int window) {
  return projective_dimension(stalk(m, 0), window);
}

// ---------------------------------------------------------------------------
// RHom and the functorial description

/// Homology dimensions of RHom(X, U) in degrees [from, to], computed from a DG-projective resolution of X
/// materialized deep enough that every listed degree is determined.
inline std::map<int, std::size_t> rhom(const ChainComplex& x, const ChainComplex& u, int from, int to) {
  std::map<int, std::size_t> out;
  if (is_exact(x) || u.is_zero()) {
    for (int l = from; l <= to; ++l) out[l] = 0;
    return out;
  }
  auto tail = ResolutionTail::of_complex(x);
  const int depth = std::max(u.hi() - from + 2, tail.lowest());
  GradedVectorComplex h = hom_complex(tail.complex(depth), u);
  for (int l = from; l <= to; ++l) out[l] = h.homology_dim(l);
  return out;
}

/// max over P_v of -inf H(Hom(W, P_v)) for the finite witness W; requires a finite verdict.
inline ExtInt dpd_functorial(const DpdVerdict& v) {
  if (v.undetermined || !v.value.is_finite() || !v.witness)
    throw FailedHypothesis("functorial description needs a finite Ding projective dimension, got " + v.to_string());
  const auto& w = *v.witness;
  ExtInt best = ExtInt::neg_inf();
  for (int q = 0; q < w.algebra()->vertices(); ++q) {
    GradedVectorComplex h = hom_complex(w, stalk(indecomposable_projective(w.algebra(), q), 0));
    best = max(best, -h.hinf());
  }
  return best;
}

inline ExtInt dpd_functorial(const ChainComplex& x, int window, const DpOptions& opt = {}) {
  return dpd_functorial(dpd_complex(x, window, opt));
}

}  // namespace dpd
