#pragma once

// Independent brute-force oracles used by the unit and acceptance suites:
// plain enumeration with no indexing tricks, kept apart from the library
// implementations they check.

#include <algorithm>
#include <functional>
#include <vector>

#include "jointslab/combinatorics.hpp"

namespace jointslab::testing {

inline mpz_class rainbow_bruteforce(const ColoredGraph& g) {
  auto colors_of = [&](int u, int v) {
    std::vector<int> out;
    for (int c = 0; c < 3; ++c) {
      for (auto [a, b] : g.color_edges[c]) {
        if ((a == u && b == v) || (a == v && b == u)) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  };
  mpz_class count = 0;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < g.vertices; ++i) {
    for (int j = i + 1; j < g.vertices; ++j) {
      for (int k = j + 1; k < g.vertices; ++k) {
        auto e1 = colors_of(i, j), e2 = colors_of(i, k), e3 = colors_of(j, k);
        bool found = false;
        for (const auto& p : perms) {
          bool ok1 = std::count(e1.begin(), e1.end(), p[0]) > 0;
          bool ok2 = std::count(e2.begin(), e2.end(), p[1]) > 0;
          bool ok3 = std::count(e3.begin(), e3.end(), p[2]) > 0;
          if (ok1 && ok2 && ok3) {
            found = true;
            break;
          }
        }
        if (found) ++count;
      }
    }
  }
  return count;
}

inline mpz_class simplices_bruteforce(const UniformHypergraph& h, unsigned dim) {
  auto is_edge = [&](std::vector<int> face) {
    std::sort(face.begin(), face.end());
    for (const auto& e : h.edges) {
      if (e == face) return true;
    }
    return false;
  };
  mpz_class count = 0;
  std::vector<int> pick(dim, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
    if (pos == dim) {
      for (unsigned drop = 0; drop < dim; ++drop) {
        std::vector<int> face;
        for (unsigned i = 0; i < dim; ++i) {
          if (i != drop) face.push_back(pick[i]);
        }
        if (!is_edge(face)) return;
      }
      ++count;
      return;
    }
    for (int v = start; v < h.vertices; ++v) {
      pick[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return count;
}

}  // namespace jointslab::testing
