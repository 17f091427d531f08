#pragma once

#include <utility>
#include <vector>

#include "jointslab/bounds.hpp"

namespace jointslab {

// Edge-colored graph; an edge may carry any number of colors (including
// zero, by simply not listing it). Edges are normalized to u < v.
struct ColoredGraph {
  int vertices = 0;
  std::vector<std::vector<std::pair<int, int>>> color_edges;

  static ColoredGraph make(int vertices,
                           const std::vector<std::vector<std::pair<int, int>>>& color_edges);

  std::vector<mpz_class> color_sizes() const;
};

struct UniformHypergraph {
  int vertices = 0;
  int arity = 0;
  std::vector<std::vector<int>> edges;  // each sorted; list sorted and deduplicated

  static UniformHypergraph make(int vertices, int arity,
                                const std::vector<std::vector<int>>& edges);
};

// Vertex triples admitting one edge of each color with all three edges
// distinct (a system of distinct representatives over the edge color sets).
// Each triple counts at most once.
mpz_class count_rainbow_triangles(const ColoredGraph& g);

// d-vertex subsets all of whose d sub-(d-1)-subsets are edges.
mpz_class count_simplices(const UniformHypergraph& h, unsigned dim);

// The simplex-count analogue of the joints bound:
// d^(d-1) S^(d-1) <= (d-1)! L^d for a (d-1)-uniform hypergraph with L edges
// and S simplices.
BoundCertificate check_kruskal_katona_bound(const UniformHypergraph& h, unsigned dim);
BoundCertificate check_kruskal_katona_bound(const mpz_class& simplices,
                                            const mpz_class& edge_count, unsigned dim);

}  // namespace jointslab
