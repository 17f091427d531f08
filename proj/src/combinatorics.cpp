#include "jointslab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "jointslab/error.hpp"

namespace jointslab {

ColoredGraph ColoredGraph::make(
    int vertices, const std::vector<std::vector<std::pair<int, int>>>& color_edges) {
  ColoredGraph g;
  g.vertices = vertices;
  g.color_edges.resize(color_edges.size());
  for (std::size_t c = 0; c < color_edges.size(); ++c) {
    std::set<std::pair<int, int>> dedup;
    for (auto [u, v] : color_edges[c]) {
      if (u == v || u < 0 || v < 0 || u >= vertices || v >= vertices) {
        throw Error("invalid graph edge");
      }
      dedup.insert({std::min(u, v), std::max(u, v)});
    }
    g.color_edges[c].assign(dedup.begin(), dedup.end());
  }
  return g;
}

std::vector<mpz_class> ColoredGraph::color_sizes() const {
  std::vector<mpz_class> sizes;
  for (const auto& edges : color_edges) sizes.emplace_back(edges.size());
  return sizes;
}

UniformHypergraph UniformHypergraph::make(int vertices, int arity,
                                          const std::vector<std::vector<int>>& edges) {
  UniformHypergraph h;
  h.vertices = vertices;
  h.arity = arity;
  std::set<std::vector<int>> dedup;
  for (auto e : edges) {
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != arity) throw Error("edge arity mismatch");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw Error("edge vertices must be distinct");
    }
    for (int v : e) {
      if (v < 0 || v >= vertices) throw Error("edge vertex out of range");
    }
    dedup.insert(std::move(e));
  }
  h.edges.assign(dedup.begin(), dedup.end());
  return h;
}

mpz_class count_rainbow_triangles(const ColoredGraph& g) {
  if (g.color_edges.size() != 3) throw Error("rainbow counting needs exactly three colors");
  int n = g.vertices;
  // color bitmask per vertex pair
  std::vector<unsigned> mask(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](int u, int v) -> unsigned& { return mask[static_cast<std::size_t>(u) * n + v]; };
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto [u, v] : g.color_edges[c]) {
      at(u, v) |= 1u << c;
      at(v, u) |= 1u << c;
    }
  }
  // Hall's condition for a system of distinct colors over three edges.
  auto has_sdr = [](unsigned m1, unsigned m2, unsigned m3) {
    if (!m1 || !m2 || !m3) return false;
    if (std::popcount(m1 | m2) < 2 || std::popcount(m1 | m3) < 2 || std::popcount(m2 | m3) < 2) {
      return false;
    }
    return std::popcount(m1 | m2 | m3) == 3;
  };
  mpz_class count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!at(i, j)) continue;
      for (int k = j + 1; k < n; ++k) {
        if (has_sdr(at(i, j), at(i, k), at(j, k))) ++count;
      }
    }
  }
  return count;
}

mpz_class count_simplices(const UniformHypergraph& h, unsigned dim) {
  if (h.arity != static_cast<int>(dim) - 1) {
    throw Error("hypergraph arity must be d-1");
  }
  std::set<std::vector<int>> edge_set(h.edges.begin(), h.edges.end());
  mpz_class count = 0;
  std::vector<int> subset(dim);
  std::vector<int> face(dim - 1);
  // iterate over d-subsets of the vertex set
  for (unsigned i = 0; i < dim; ++i) subset[i] = static_cast<int>(i);
  if (h.vertices < static_cast<int>(dim)) return 0;
  while (true) {
    bool all_faces = true;
    for (unsigned drop = 0; drop < dim && all_faces; ++drop) {
      std::size_t pos = 0;
      for (unsigned i = 0; i < dim; ++i) {
        if (i != drop) face[pos++] = subset[i];
      }
      if (!edge_set.count(face)) all_faces = false;
    }
    if (all_faces) ++count;
    // next combination
    int i = static_cast<int>(dim) - 1;
    while (i >= 0 && subset[i] == h.vertices - static_cast<int>(dim) + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (unsigned j = i + 1; j < dim; ++j) subset[j] = subset[j - 1] + 1;
  }
  return count;
}

BoundCertificate check_kruskal_katona_bound(const UniformHypergraph& h, unsigned dim) {
  return check_kruskal_katona_bound(count_simplices(h, dim), mpz_class(h.edges.size()), dim);
}

BoundCertificate check_kruskal_katona_bound(const mpz_class& simplices,
                                            const mpz_class& edge_count, unsigned dim) {
  return certify_main_bound(simplices, edge_count, dim);
}

}  // namespace jointslab
