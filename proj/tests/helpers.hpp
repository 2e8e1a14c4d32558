#pragma once

// Conversions between library values and the plain types used by oracles.

#include "oracles.hpp"
#include "projdim/functions.hpp"
#include "projdim/gf.hpp"

#include <random>

namespace testing_support {

inline oracle::Mask to_mask(std::span<const projdim::gf::Element> v) {
  oracle::Mask m = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] % 2) m |= oracle::Mask{1} << k;
  }
  return m;
}

inline projdim::gf::Vector from_mask(oracle::Mask m, std::size_t d) {
  projdim::gf::Vector v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = (m >> k) & 1;
  return v;
}

/// Every vector of an F_2 subspace, spanned from its basis rows.
inline oracle::SpanSet vectors_of(const projdim::gf::Subspace& s) {
  std::vector<oracle::Mask> gens;
  for (std::size_t r = 0; r < s.dim(); ++r) gens.push_back(to_mask(s.basis().row(r)));
  return oracle::span_of(gens);
}

inline projdim::gf::Subspace subspace_from_masks(const std::vector<oracle::Mask>& gens, std::size_t d) {
  std::vector<projdim::gf::Vector> rows;
  for (auto g : gens) rows.push_back(from_mask(g, d));
  return projdim::gf::Subspace::span(2, d, rows);
}

inline projdim::gf::Subspace random_subspace(std::mt19937& rng, projdim::gf::Element q, std::size_t d,
                                             std::size_t max_gens) {
  std::uniform_int_distribution<std::size_t> count(0, max_gens);
  std::uniform_int_distribution<projdim::gf::Element> entry(0, q - 1);
  std::vector<projdim::gf::Vector> rows(count(rng), projdim::gf::Vector(d));
  for (auto& r : rows) {
    for (auto& e : r) e = entry(rng);
  }
  return projdim::gf::Subspace::span(q, d, rows);
}

inline oracle::Adjacency to_adjacency(const projdim::BipartiteGraph& g) {
  oracle::Adjacency a(g.left_size(), std::vector<int>(g.right_size(), 0));
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) a[u][v] = g.has_edge(u, v);
  }
  return a;
}

inline projdim::BipartiteGraph from_adjacency(const oracle::Adjacency& a) {
  projdim::BipartiteGraph g(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a[u].size(); ++v) {
      if (a[u][v]) g.set_edge(u, v);
    }
  }
  return g;
}

inline std::vector<std::vector<oracle::Big>> to_big(const projdim::gf::IntegerMatrix& m) {
  std::vector<std::vector<oracle::Big>> out(m.rows(), std::vector<oracle::Big>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

}  // namespace testing_support
