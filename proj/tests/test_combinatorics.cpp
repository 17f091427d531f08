#include <doctest.h>

#include <algorithm>
#include <random>

#include "jointslab/combinatorics.hpp"
#include "jointslab/configs.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace jointslab;
using namespace jointslab::testing;

namespace {

const std::vector<std::vector<std::pair<int, int>>> kK4Matchings = {
    {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};

}  // namespace

TEST_CASE("K4 with matching colors has four rainbow triangles") {
  ColoredGraph g = ColoredGraph::make(4, kK4Matchings);
  CHECK(count_rainbow_triangles(g) == 4);
}

TEST_CASE("the k=2 blow-up coloring has 32 rainbow triangles") {
  std::vector<std::vector<std::pair<int, int>>> colors(3);
  for (int c = 0; c < 3; ++c) {
    for (auto [u, v] : kK4Matchings[c]) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) colors[c].push_back({2 * u + a, 2 * v + b});
      }
    }
  }
  ColoredGraph g = ColoredGraph::make(8, colors);
  CHECK(count_rainbow_triangles(g) == 32);
  for (const auto& edges : g.color_edges) CHECK(edges.size() == 8);
}

TEST_CASE("a monochromatic clique has no rainbow triangle") {
  std::vector<std::vector<std::pair<int, int>>> colors(3);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) colors[0].push_back({i, j});
  }
  CHECK(count_rainbow_triangles(ColoredGraph::make(4, colors)) == 0);
}

TEST_CASE("multiply-colored edges need a system of distinct colors") {
  // triangle where one edge carries two colors
  std::vector<std::vector<std::pair<int, int>>> colors(3);
  colors[0] = {{0, 1}, {0, 2}};
  colors[1] = {{0, 1}};
  colors[2] = {{1, 2}};
  // edge {0,1}: colors {0,1}; {0,2}: {0}; {1,2}: {2} -> assign {0,1}->1, {0,2}->0
  CHECK(count_rainbow_triangles(ColoredGraph::make(3, colors)) == 1);

  // all three edges share the single color 0, plus color 1 on one edge: no SDR
  colors[0] = {{0, 1}, {0, 2}, {1, 2}};
  colors[1] = {{0, 1}};
  colors[2] = {};
  CHECK(count_rainbow_triangles(ColoredGraph::make(3, colors)) == 0);
}

TEST_CASE("simplex counts on complete hypergraphs are binomials") {
  for (unsigned d = 3; d <= 5; ++d) {
    for (int k = static_cast<int>(d); k <= 12; ++k) {
      std::vector<std::vector<int>> edges;
      std::vector<int> pick(d - 1);
      std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
        if (pos == d - 1) {
          edges.push_back(pick);
          return;
        }
        for (int v = start; v < k; ++v) {
          pick[pos] = v;
          rec(pos + 1, v + 1);
        }
      };
      rec(0, 0);
      UniformHypergraph h = UniformHypergraph::make(k, static_cast<int>(d) - 1, edges);
      CHECK(count_simplices(h, d) == binomial(k, d));
    }
  }
}

TEST_CASE("simplex counting frozen cases") {
  UniformHypergraph h = UniformHypergraph::make(5, 2, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
  CHECK(count_simplices(h, 3) == 1);  // only the triangle 123
  UniformHypergraph empty = UniformHypergraph::make(5, 2, {});
  CHECK(count_simplices(empty, 3) == 0);
}

TEST_CASE("brute-force oracle equivalence on random instances") {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> nv(3, 15);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    int n = nv(rng);
    // random 3-coloring where each edge picks each color independently
    std::vector<std::vector<std::pair<int, int>>> colors(3);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int c = 0; c < 3; ++c) {
          if (prob(rng) < 0.35) colors[c].push_back({i, j});
        }
      }
    }
    ColoredGraph g = ColoredGraph::make(n, colors);
    CHECK(count_rainbow_triangles(g) == rainbow_bruteforce(g));

    // random 2-uniform hypergraph (d = 3)
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (prob(rng) < 0.5) edges.push_back({i, j});
      }
    }
    UniformHypergraph h = UniformHypergraph::make(n, 2, edges);
    CHECK(count_simplices(h, 3) == simplices_bruteforce(h, 3));
  }
  // a few higher-arity instances
  for (int trial = 0; trial < 10; ++trial) {
    int n = 10;
    std::vector<std::vector<int>> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int c = b + 1; c < n; ++c) {
          if (prob(rng) < 0.4) edges.push_back({a, b, c});
        }
      }
    }
    UniformHypergraph h = UniformHypergraph::make(n, 3, edges);
    CHECK(count_simplices(h, 4) == simplices_bruteforce(h, 4));
  }
}

TEST_CASE("kruskal-katona style bound on the complete k=5 hypergraph") {
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) edges.push_back({i, j});
  }
  UniformHypergraph h = UniformHypergraph::make(5, 2, edges);
  BoundCertificate cert = check_kruskal_katona_bound(h, 3);
  CHECK(cert.lhs == 900);   // 9 * 100
  CHECK(cert.rhs == 2000);  // 2 * 1000
  CHECK(cert.holds);
  CHECK(check_kruskal_katona_bound(0, 0, 3).holds);
}

TEST_CASE("cross-module: encoded configurations match the graph counts") {
  Field f = Field::prime(10007);
  SUBCASE("blow-up joints equal rainbow triangles") {
    for (std::size_t k : {1, 2}) {
      MultijointsConfiguration cfg = generate_k4_blowup_multijoints(k, f);
      std::vector<std::vector<std::pair<int, int>>> colors(3);
      for (int c = 0; c < 3; ++c) {
        for (auto [u, v] : kK4Matchings[c]) {
          for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
              colors[c].push_back({static_cast<int>(k * u + a), static_cast<int>(k * v + b)});
            }
          }
        }
      }
      ColoredGraph g = ColoredGraph::make(static_cast<int>(4 * k), colors);
      CHECK(mpz_class(cfg.joint_count()) == count_rainbow_triangles(g));
    }
  }
  SUBCASE("hypergraph joints equal simplex counts") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<int>> edges;
      for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
          if (prob(rng) < 0.6) edges.push_back({i, j});
        }
      }
      UniformHypergraph h = UniformHypergraph::make(6, 2, edges);
      JointsConfiguration cfg = generate_from_hypergraph(6, 3, edges, f);
      CHECK(mpz_class(cfg.joint_count()) == count_simplices(h, 3));
      CHECK(mpz_class(cfg.line_count()) == mpz_class(h.edges.size()));
    }
  }
}
