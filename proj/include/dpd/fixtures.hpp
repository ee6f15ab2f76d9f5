#pragma once

#include <random>
#include <string>
#include <vector>

#include "dpd/complex.hpp"

namespace dpd::fixtures {

/// F_2[x]/(x^2).
inline AlgebraPtr fix1() {
  static const AlgebraPtr a = build_algebra({1, {{"a", 0, 0}}}, {{{1, {0, 0}}}}, 2);
  return a;
}

/// Path algebra of 1 -> 2 (vertices 0, 1).
inline AlgebraPtr fix2() {
  static const AlgebraPtr a = build_algebra({2, {{"a", 0, 1}}}, {}, 2);
  return a;
}

/// a: 1 -> 2, loop b at 2, relations ba = 0, b^2 = 0.
inline AlgebraPtr fix3() {
  static const AlgebraPtr a = build_algebra({2, {{"a", 0, 1}, {"b", 1, 1}}}, {{{1, {0, 1}}}, {{1, {1, 1}}}}, 2);
  return a;
}

/// F_2[x,y]/(x^2, y^2, xy - yx).
inline AlgebraPtr fix4() {
  static const AlgebraPtr a = build_algebra({1, {{"x", 0, 0}, {"y", 0, 0}}},
                                            {{{1, {0, 0}}}, {{1, {1, 1}}}, {{1, {0, 1}}, {1, {1, 0}}}}, 2);
  return a;
}

/// F_2[x,y]/(x^2, xy, y^2): not self-injective, syzygies of k grow without repeating.
inline AlgebraPtr honesty() {
  static const AlgebraPtr a = build_algebra({1, {{"x", 0, 0}, {"y", 0, 0}}},
                                            {{{1, {0, 0}}}, {{1, {1, 1}}}, {{1, {0, 1}}}, {{1, {1, 0}}}}, 2);
  return a;
}

/// 0 -> P_2 -> P_1 -> 0 over fix2, degrees 1 and 0.
inline ChainComplex xfix2() {
  const auto& alg = fix2();
  auto p1 = indecomposable_projective(alg, 0), p2 = indecomposable_projective(alg, 1);
  return build_complex(alg, 0, {p1, p2}, {hom_space(p2, p1).basis().at(0)});
}

struct NamedAlgebra {
  std::string name;
  AlgebraPtr alg;
};

inline std::vector<NamedAlgebra> all_algebras() {
  return {{"FIX1", fix1()}, {"FIX2", fix2()}, {"FIX3", fix3()}, {"FIX4", fix4()}};
}

// ---------------------------------------------------------------------------
// Seeded random objects

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline FpMatrix random_matrix(Residue p, std::size_t r, std::size_t c, Rng& rng) {
  FpMatrix m(p, r, c);
  std::uniform_int_distribution<Residue> d(0, p - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline ModuleMap random_hom(const HomSpace& h, Rng& rng) {
  return h.element(random_matrix(h.source().p(), h.dim(), 1, rng));
}

inline ModuleMap random_hom(const Representation& m, const Representation& n, Rng& rng) {
  return random_hom(HomSpace(m, n), rng);
}

inline FreeModule random_free(const AlgebraPtr& alg, int min_rank, int max_rank, Rng& rng) {
  std::vector<int> gens;
  const int r = uniform(rng, min_rank, max_rank);
  for (int i = 0; i < r; ++i) gens.push_back(uniform(rng, 0, alg->vertices() - 1));
  return FreeModule(alg, gens);
}

/// Mostly cokernels of random maps into the radical of a small free module, sometimes simples or kernels.
inline Representation random_module(const AlgebraPtr& alg, Rng& rng, int max_gens = 2) {
  const int kind = uniform(rng, 0, 9);
  if (kind == 0) return simple_module(alg, uniform(rng, 0, alg->vertices() - 1));
  if (kind == 1) {
    FreeModule a = random_free(alg, 1, max_gens, rng), b = random_free(alg, 1, max_gens, rng);
    return kernel(random_hom(a.rep(), b.rep(), rng)).module;
  }
  FreeModule f0 = random_free(alg, 1, max_gens, rng);
  FreeModule f1 = random_free(alg, 0, max_gens, rng);
  Submodule rad = submodule_from_basis(f0.rep(), radical_span(f0.rep()));
  return cokernel(compose(rad.inclusion, random_hom(f1.rep(), rad.module, rng))).module;
}

/// Nonzero random module (resampled until nonzero).
inline Representation random_nonzero_module(const AlgebraPtr& alg, Rng& rng, int max_gens = 2) {
  for (;;) {
    auto m = random_module(alg, rng, max_gens);
    if (!m.is_zero()) return m;
  }
}

/// Complex on [lo, lo + len - 1] with the given terms; each differential is a random map out of the previous cokernel.
inline ChainComplex random_complex_on(const AlgebraPtr& alg, int lo, std::vector<Representation> terms, Rng& rng) {
  const int len = static_cast<int>(terms.size());
  std::vector<ModuleMap> diffs(len > 0 ? len - 1 : 0);
  for (int i = len - 1; i >= 1; --i) {
    // delta_{lo+i}: terms[i] -> terms[i-1], killing the image of delta_{lo+i+1}.
    if (i == len - 1) {
      diffs[i - 1] = random_hom(terms[i], terms[i - 1], rng);
    } else {
      auto q = cokernel(diffs[i]);
      diffs[i - 1] = compose(random_hom(q.module, terms[i - 1], rng), q.projection);
    }
  }
  return build_complex(alg, lo, std::move(terms), std::move(diffs));
}

inline ChainComplex random_complex(const AlgebraPtr& alg, Rng& rng, int max_len = 3, int max_gens = 2) {
  const int len = uniform(rng, 1, max_len);
  const int lo = uniform(rng, -1, 1);
  std::vector<Representation> terms;
  for (int i = 0; i < len; ++i) terms.push_back(random_module(alg, rng, max_gens));
  return random_complex_on(alg, lo, std::move(terms), rng);
}

/// Random complex with nonzero homology.
inline ChainComplex random_nonexact_complex(const AlgebraPtr& alg, Rng& rng, int max_len = 3, int max_gens = 2) {
  for (;;) {
    auto c = random_complex(alg, rng, max_len, max_gens);
    if (!is_exact(c)) return c;
  }
}

/// Bounded complex of free modules (perfect).
inline ChainComplex random_perfect_complex(const AlgebraPtr& alg, Rng& rng, int max_len = 3, int max_rank = 2) {
  const int len = uniform(rng, 1, max_len);
  const int lo = uniform(rng, -1, 1);
  std::vector<Representation> terms;
  for (int i = 0; i < len; ++i) terms.push_back(random_free(alg, 0, max_rank, rng).rep());
  return random_complex_on(alg, lo, std::move(terms), rng);
}

/// Reads a degree-l element of hom_complex(x, y) back as maps x_q -> y_{q+l}.
inline std::map<int, ModuleMap> hom_complex_element(const ChainComplex& x, const ChainComplex& y, int l,
                                                    const FpMatrix& coords) {
  std::map<int, ModuleMap> out;
  std::size_t off = 0;
  for (int q = x.lo(); q <= x.hi(); ++q) {
    HomSpace h(x.term(q), y.term(q + l));
    out.emplace(q, h.element(coords.block(off, 0, h.dim(), 1)));
    off += h.dim();
  }
  return out;
}

/// Random chain map: a random degree-0 cycle of the Hom complex.
inline ChainMap random_chain_map(const ChainComplex& x, const ChainComplex& y, Rng& rng) {
  if (x.empty_range() || y.empty_range()) return ChainMap::zero(x, y);
  GradedVectorComplex h = hom_complex(x, y);
  FpMatrix z = kernel(h.differential(0));
  FpMatrix c = z * random_matrix(x.p(), z.cols(), 1, rng);
  if (h.dim(0) == 0) return ChainMap::zero(x, y);
  ChainMap f(x, y, hom_complex_element(x, y, 0, c));
  if (!f.commutes()) throw Error("internal: random chain map does not commute");
  return f;
}

/// 0 -> Q -> Q -> 0 via the identity, in degrees m and m - 1.
inline ChainComplex disk(const Representation& q, int m) {
  return {q.algebra(), m - 1, {q, q}, {ModuleMap::identity(q)}};
}

}  // namespace dpd::fixtures
