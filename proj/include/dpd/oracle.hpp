#pragma once

#include <vector>

#include "dpd/repmod.hpp"

namespace dpd::oracle {

/// Generators of m with their vertices: every basis vector while m is small, otherwise a greedy spanning set
/// (basis vectors in order, skipping those already generated), always with one redundant extra generator.
struct Generators {
  std::vector<int> vertices;
  std::vector<FpMatrix> images;
};

inline Generators redundant_generators(const Representation& m, std::size_t all_elements_limit = 8) {
  Generators g;
  const int nv = m.algebra()->vertices();
  const Residue p = m.p();
  auto unit = [&](int v, std::size_t i) {
    FpMatrix e(p, m.dim(v), 1);
    e(i, 0) = 1;
    return e;
  };
  if (m.total_dim() <= all_elements_limit) {
    for (int v = 0; v < nv; ++v)
      for (std::size_t i = 0; i < m.dim(v); ++i) {
        g.vertices.push_back(v);
        g.images.push_back(unit(v, i));
      }
    return g;
  }
  // span of the submodule generated so far, per vertex
  std::vector<FpMatrix> span;
  for (int v = 0; v < nv; ++v) span.emplace_back(p, m.dim(v), 0);
  const auto& alg = *m.algebra();
  for (int v = 0; v < nv; ++v)
    for (std::size_t i = 0; i < m.dim(v); ++i) {
      FpMatrix e = unit(v, i);
      if (rank(hstack({span[v], e}, p, m.dim(v))) == span[v].cols()) continue;
      g.vertices.push_back(v);
      g.images.push_back(e);
      for (int w = 0; w < nv; ++w) {
        std::vector<FpMatrix> parts{span[w]};
        for (int b : alg.between(v, w)) parts.push_back(m.action(b) * e);
        span[w] = column_space(hstack(parts, p, m.dim(w)));
      }
    }
  if (!g.vertices.empty()) {
    g.vertices.push_back(g.vertices.front());
    g.images.push_back(g.images.front());
  }
  return g;
}

/// Ext^i(m, n) dimensions for i = 0..max_i from a non-minimal free resolution.
inline std::vector<std::size_t> ext_dims(const Representation& m, const Representation& n, int max_i) {
  const Residue p = m.p();
  const auto& alg = m.algebra();
  std::vector<FreeModule> frees;
  std::vector<ModuleMap> diffs;  // diffs[i]: F_{i+1} -> F_i
  Representation cur = m;
  std::optional<ModuleMap> into;  // cur -> F_{i-1}
  for (int i = 0; i <= max_i + 1; ++i) {
    Generators g = redundant_generators(cur);
    FreeModule f(alg, g.vertices);
    ModuleMap eps = map_from_free(f, cur, g.images);
    if (into) diffs.push_back(compose(*into, eps));
    frees.push_back(f);
    Submodule k = kernel(eps);
    cur = k.module;
    into = k.inclusion;
  }
  // Hom(F_i, N) coordinates: images of the generators.
  auto hom_dim = [&](const FreeModule& f) {
    std::size_t d = 0;
    for (int v : f.generators()) d += n.dim(v);
    return d;
  };
  auto pullback = [&](std::size_t i) {
    const FreeModule& src = frees[i];
    const FreeModule& dst = frees[i + 1];
    FpMatrix out(p, hom_dim(dst), hom_dim(src));
    std::size_t col = 0;
    for (std::size_t g = 0; g < src.rank(); ++g)
      for (std::size_t r = 0; r < n.dim(src.generators()[g]); ++r, ++col) {
        std::vector<FpMatrix> images;
        for (std::size_t h = 0; h < src.rank(); ++h) images.emplace_back(p, n.dim(src.generators()[h]), 1);
        images[g](r, 0) = 1;
        ModuleMap phi = compose(map_from_free(src, n, images), diffs[i]);
        std::size_t row = 0;
        for (std::size_t h = 0; h < dst.rank(); ++h) {
          FpMatrix im = generator_image(dst, phi, h);
          out.set_block(row, col, im);
          row += im.rows();
        }
      }
    return out;
  };
  std::vector<std::size_t> out;
  std::vector<FpMatrix> d;
  for (int i = 0; i <= max_i; ++i) d.push_back(pullback(i));
  for (int i = 0; i <= max_i; ++i) {
    std::size_t in = i == 0 ? 0 : rank(d[i - 1]);
    out.push_back(hom_dim(frees[i]) - rank(d[i]) - in);
  }
  return out;
}

}  // namespace dpd::oracle
