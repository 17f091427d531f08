#include "jointslab/configs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace jointslab {

namespace {

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ", ";
    os << p.coords[i].str();
  }
  os << ")";
  return os.str();
}

void for_each_subset(std::size_t k, std::size_t r,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (r > k) return;
  std::vector<int> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<int>(i);
  while (true) {
    fn(idx);
    // next combination in lexicographic order
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == static_cast<int>(k - r + i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Line> dedup_lines(std::vector<Line> lines) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

// Greedy scan over incident lines in canonical order: the lexicographically
// smallest subset of full-rank directions, or empty if the rank never
// reaches `dim`.
std::vector<int> choose_independent_lines(const Field& field, std::size_t dim,
                                          const std::vector<Line>& lines,
                                          const std::vector<int>& incident) {
  std::vector<int> chosen;
  std::vector<Vec> span;
  for (int idx : incident) {
    span.push_back(lines[idx].direction());
    if (rank(Matrix::from_rows(field, span)) == span.size()) {
      chosen.push_back(idx);
      if (chosen.size() == dim) return chosen;
    } else {
      span.pop_back();
    }
  }
  return {};
}

struct GenericHyperplanes {
  std::vector<Hyperplane> planes;
  std::vector<Scalar> params;
};

// Hyperplane normals on the moment curve: normal (1, t, ..., t^{d-1}) and
// offset t^d, with distinct parameters t.
GenericHyperplanes moment_hyperplanes(std::size_t k, std::size_t dim, const Field& field,
                                      std::uint64_t seed, int attempt) {
  if (field.is_prime_field() && field.modulus() <= static_cast<std::int64_t>(k)) {
    throw DegenerateConstruction("field has fewer than k distinct nonzero parameters");
  }
  std::vector<Scalar> ts;
  if (attempt == 0) {
    for (std::size_t i = 1; i <= k; ++i) ts.emplace_back(field, static_cast<std::int64_t>(i));
  } else {
    std::mt19937_64 rng(seed * 1000003 + static_cast<std::uint64_t>(attempt));
    std::int64_t hi = field.is_prime_field() ? field.modulus() - 1 : 1000000;
    std::uniform_int_distribution<std::int64_t> dist(1, hi);
    std::set<std::int64_t> used;
    while (used.size() < k) used.insert(dist(rng));
    for (auto t : used) ts.emplace_back(field, t);
  }
  GenericHyperplanes out;
  for (const auto& t : ts) {
    Vec normal;
    Scalar power = Scalar::one(field);
    for (std::size_t i = 0; i < dim; ++i) {
      normal.push_back(power);
      power *= t;
    }
    out.planes.push_back(Hyperplane{std::move(normal), power});  // offset t^d
    out.params.push_back(t);
  }
  return out;
}

std::optional<Point> subset_intersection_point(const Field& field, std::size_t dim,
                                               const std::vector<Hyperplane>& planes,
                                               const std::vector<int>& subset) {
  std::vector<Hyperplane> chosen;
  for (int i : subset) chosen.push_back(planes[i]);
  auto flat = intersect_hyperplanes(field, dim, chosen);
  if (!flat || !flat->is_point()) return std::nullopt;
  return flat->base();
}

std::optional<Line> subset_intersection_line(const Field& field, std::size_t dim,
                                             const std::vector<Hyperplane>& planes,
                                             const std::vector<int>& subset) {
  std::vector<Hyperplane> chosen;
  for (int i : subset) chosen.push_back(planes[i]);
  auto flat = intersect_hyperplanes(field, dim, chosen);
  if (!flat || flat->flat_dim() != 1) return std::nullopt;
  return flat->as_line();
}

}  // namespace

std::vector<Vec> JointsConfiguration::joint_directions(std::size_t j) const {
  std::vector<Vec> dirs;
  dirs.reserve(joints[j].lines.size());
  for (int idx : joints[j].lines) dirs.push_back(lines[idx].direction());
  return dirs;
}

std::vector<std::vector<std::pair<int, int>>> JointsConfiguration::chosen_joints_per_line()
    const {
  std::vector<std::vector<std::pair<int, int>>> per_line(lines.size());
  for (std::size_t j = 0; j < joints.size(); ++j) {
    for (std::size_t slot = 0; slot < joints[j].lines.size(); ++slot) {
      per_line[joints[j].lines[slot]].emplace_back(static_cast<int>(j),
                                                   static_cast<int>(slot));
    }
  }
  return per_line;
}

void JointsConfiguration::validate() const {
  std::set<Point> seen;
  for (std::size_t j = 0; j < joints.size(); ++j) {
    const Joint& joint = joints[j];
    if (joint.point.dim() != dim) throw Error("joint dimension mismatch");
    if (!seen.insert(joint.point).second) {
      throw Error("duplicate joint at " + point_str(joint.point));
    }
    if (joint.lines.size() != dim) throw Error("joint must choose exactly d lines");
    std::set<int> distinct(joint.lines.begin(), joint.lines.end());
    if (distinct.size() != dim) throw Error("joint chooses a line twice");
    for (int idx : joint.lines) {
      if (idx < 0 || idx >= static_cast<int>(lines.size())) throw Error("line index range");
      if (!point_on(joint.point, lines[idx])) {
        throw Error("chosen line does not contain its joint at " + point_str(joint.point));
      }
    }
    if (rank(Matrix::from_rows(field, joint_directions(j))) != dim) {
      throw Error("chosen directions are dependent at " + point_str(joint.point));
    }
  }
}

std::vector<std::size_t> MultijointsConfiguration::family_sizes() const {
  std::vector<std::size_t> sizes(dim, 0);
  for (int f : line_family) sizes[f]++;
  return sizes;
}

JointsConfiguration MultijointsConfiguration::as_joints_configuration() const {
  return JointsConfiguration{field, dim, lines, joints};
}

void MultijointsConfiguration::validate() const {
  if (line_family.size() != lines.size()) throw Error("family label count mismatch");
  for (int f : line_family) {
    if (f < 0 || f >= static_cast<int>(dim)) throw Error("family label range");
  }
  as_joints_configuration().validate();
  for (const Joint& joint : joints) {
    for (std::size_t slot = 0; slot < joint.lines.size(); ++slot) {
      if (line_family[joint.lines[slot]] != static_cast<int>(slot)) {
        throw Error("multijoint slot/family mismatch");
      }
    }
    // Exactly one line of each family passes through a multijoint.
    std::vector<int> through(dim, 0);
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
      if (point_on(joint.point, lines[idx])) through[line_family[idx]]++;
    }
    for (std::size_t f = 0; f < dim; ++f) {
      if (through[f] != 1) {
        throw Error("multijoint at " + point_str(joint.point) + " meets family " +
                    std::to_string(f) + " in " + std::to_string(through[f]) + " lines");
      }
    }
  }
}

std::vector<std::vector<std::pair<int, int>>> FlatJointsConfiguration::chosen_joints_per_line()
    const {
  std::vector<std::vector<std::pair<int, int>>> per_line(lines.size());
  for (std::size_t j = 0; j < joints.size(); ++j) {
    for (std::size_t slot = 0; slot < joints[j].lines.size(); ++slot) {
      per_line[joints[j].lines[slot]].emplace_back(static_cast<int>(j),
                                                   static_cast<int>(slot));
    }
  }
  return per_line;
}

std::vector<std::vector<int>> FlatJointsConfiguration::chosen_joints_per_flat() const {
  std::vector<std::vector<int>> per_flat(flats.size());
  for (std::size_t j = 0; j < joints.size(); ++j) {
    per_flat[joints[j].flat].push_back(static_cast<int>(j));
  }
  return per_flat;
}

void FlatJointsConfiguration::validate() const {
  if (m == 0 || m >= dim) throw Error("flat configuration requires 0 < m < d");
  for (const Flat& f : flats) {
    if (f.flat_dim() != dim - m) throw Error("flat dimension must be d-m");
  }
  std::set<Point> seen;
  for (const Joint& joint : joints) {
    if (!seen.insert(joint.point).second) {
      throw Error("duplicate joint at " + point_str(joint.point));
    }
    if (joint.lines.size() != m) throw Error("flat joint must choose exactly m lines");
    if (joint.flat < 0 || joint.flat >= static_cast<int>(flats.size())) {
      throw Error("flat index range");
    }
    if (!point_on(joint.point, flats[joint.flat])) {
      throw Error("chosen flat does not contain its joint at " + point_str(joint.point));
    }
    std::vector<Vec> dirs;
    for (int idx : joint.lines) {
      if (idx < 0 || idx >= static_cast<int>(lines.size())) throw Error("line index range");
      if (!point_on(joint.point, lines[idx])) {
        throw Error("chosen line does not contain its joint at " + point_str(joint.point));
      }
      dirs.push_back(lines[idx].direction());
    }
    for (const Vec& v : flats[joint.flat].basis()) dirs.push_back(v);
    if (rank(Matrix::from_rows(field, dirs)) != dim) {
      throw Error("lines and flat do not span at " + point_str(joint.point));
    }
  }
}

IncidenceGraph incidence_graph(const JointsConfiguration& cfg) {
  IncidenceGraph g;
  g.joint_count = cfg.joint_count();
  g.adjacency.assign(g.joint_count, {});
  std::set<std::pair<int, int>> edges;
  for (const auto& chosen : cfg.chosen_joints_per_line()) {
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        int u = chosen[a].first, v = chosen[b].first;
        if (edges.insert({std::min(u, v), std::max(u, v)}).second) {
          g.adjacency[u].push_back(v);
          g.adjacency[v].push_back(u);
        }
      }
    }
  }
  g.component.assign(g.joint_count, -1);
  for (std::size_t start = 0; start < g.joint_count; ++start) {
    if (g.component[start] != -1) continue;
    int label = static_cast<int>(g.component_count++);
    std::vector<int> stack{static_cast<int>(start)};
    g.component[start] = label;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.adjacency[u]) {
        if (g.component[v] == -1) {
          g.component[v] = label;
          stack.push_back(v);
        }
      }
    }
  }
  return g;
}

JointsConfiguration detect_joints(const Field& field, std::size_t dim,
                                  std::vector<Line> lines) {
  JointsConfiguration cfg{field, dim, dedup_lines(std::move(lines)), {}};
  std::set<Point> candidates;
  for (std::size_t i = 0; i < cfg.lines.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.lines.size(); ++j) {
      auto p = intersect_lines(cfg.lines[i], cfg.lines[j]);
      if (p) candidates.insert(*p);
    }
  }
  for (const Point& p : candidates) {
    std::vector<int> incident;
    for (std::size_t idx = 0; idx < cfg.lines.size(); ++idx) {
      if (point_on(p, cfg.lines[idx])) incident.push_back(static_cast<int>(idx));
    }
    if (incident.size() < dim) continue;
    std::vector<int> chosen = choose_independent_lines(field, dim, cfg.lines, incident);
    if (!chosen.empty()) cfg.joints.push_back(Joint{p, std::move(chosen)});
  }
  return cfg;
}

MultijointsConfiguration detect_multijoints(const Field& field, std::size_t dim,
                                            const std::vector<std::vector<Line>>& families) {
  if (families.size() != dim) throw Error("need exactly d line families");
  MultijointsConfiguration cfg{field, dim, {}, {}, {}};
  std::vector<std::size_t> family_start;
  for (std::size_t f = 0; f < dim; ++f) {
    family_start.push_back(cfg.lines.size());
    for (const Line& l : dedup_lines(families[f])) {
      cfg.lines.push_back(l);
      cfg.line_family.push_back(static_cast<int>(f));
    }
  }
  std::set<Point> candidates;
  for (std::size_t i = 0; i < cfg.lines.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.lines.size(); ++j) {
      auto p = intersect_lines(cfg.lines[i], cfg.lines[j]);
      if (p) candidates.insert(*p);
    }
  }
  for (const Point& p : candidates) {
    std::vector<std::vector<int>> per_family(dim);
    for (std::size_t idx = 0; idx < cfg.lines.size(); ++idx) {
      if (point_on(p, cfg.lines[idx])) per_family[cfg.line_family[idx]].push_back(idx);
    }
    bool exactly_one = true;
    for (const auto& v : per_family) {
      if (v.size() != 1) {
        exactly_one = false;
        break;
      }
    }
    if (!exactly_one) continue;
    std::vector<int> chosen;
    std::vector<Vec> dirs;
    for (std::size_t f = 0; f < dim; ++f) {
      chosen.push_back(per_family[f].front());
      dirs.push_back(cfg.lines[chosen.back()].direction());
    }
    if (rank(Matrix::from_rows(field, dirs)) == dim) {
      cfg.joints.push_back(Joint{p, std::move(chosen)});
    }
  }
  return cfg;
}

JointsConfiguration generate_generic_hyperplane_config(std::size_t k, std::size_t dim,
                                                       const Field& field,
                                                       std::uint64_t seed) {
  if (k < dim) throw Error("need at least d hyperplanes");
  std::string last_failure;
  for (int attempt = 0; attempt < 4; ++attempt) {
    GenericHyperplanes gh = moment_hyperplanes(k, dim, field, seed, attempt);
    try {
      std::map<Line, std::vector<int>> line_of_subset;  // canonical line -> subset
      std::map<std::vector<int>, int> line_index;       // subset -> final line index
      std::vector<Line> all_lines;
      for_each_subset(k, dim - 1, [&](const std::vector<int>& t) {
        auto line = subset_intersection_line(field, dim, gh.planes, t);
        if (!line) throw DegenerateConstruction("hyperplane subset does not meet in a line");
        if (!line_of_subset.emplace(*line, t).second) {
          throw DegenerateConstruction("two hyperplane subsets produce the same line");
        }
        all_lines.push_back(*line);
      });
      std::sort(all_lines.begin(), all_lines.end());
      for (std::size_t i = 0; i < all_lines.size(); ++i) {
        line_index[line_of_subset.at(all_lines[i])] = static_cast<int>(i);
      }

      std::map<Point, Joint> joints;
      for_each_subset(k, dim, [&](const std::vector<int>& s) {
        auto p = subset_intersection_point(field, dim, gh.planes, s);
        if (!p) throw DegenerateConstruction("hyperplane subset does not meet in a point");
        std::vector<int> chosen;
        for (std::size_t drop = 0; drop < dim; ++drop) {
          std::vector<int> t;
          for (std::size_t i = 0; i < dim; ++i) {
            if (i != drop) t.push_back(s[i]);
          }
          chosen.push_back(line_index.at(t));
        }
        std::sort(chosen.begin(), chosen.end());
        if (!joints.emplace(*p, Joint{*p, std::move(chosen)}).second) {
          throw DegenerateConstruction("two hyperplane subsets meet in the same point");
        }
      });

      JointsConfiguration cfg{field, dim, std::move(all_lines), {}};
      for (auto& [p, joint] : joints) cfg.joints.push_back(std::move(joint));
      for (std::size_t j = 0; j < cfg.joints.size(); ++j) {
        if (rank(Matrix::from_rows(field, cfg.joint_directions(j))) != dim) {
          throw DegenerateConstruction("joint directions are dependent");
        }
        // Genericity: the joint lies on exactly its d construction lines.
        std::size_t through = 0;
        for (const Line& l : cfg.lines) {
          if (point_on(cfg.joints[j].point, l)) ++through;
        }
        if (through != dim) {
          throw DegenerateConstruction("joint lies on unexpected extra lines");
        }
      }
      return cfg;
    } catch (const DegenerateConstruction& e) {
      last_failure = e.what();
    }
  }
  throw DegenerateConstruction("generic construction failed after retries (" + last_failure +
                               "); field may be too small");
}

JointsConfiguration generate_from_hypergraph(std::size_t k, std::size_t dim,
                                             const std::vector<std::vector<int>>& edges,
                                             const Field& field, std::uint64_t seed) {
  std::set<std::vector<int>> edge_set;
  for (auto e : edges) {
    std::sort(e.begin(), e.end());
    if (e.size() != dim - 1) throw Error("edges must be (d-1)-subsets");
    for (int v : e) {
      if (v < 0 || v >= static_cast<int>(k)) throw Error("edge vertex out of range");
    }
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw Error("edge vertices must be distinct");
    }
    edge_set.insert(e);
  }
  std::string last_failure;
  for (int attempt = 0; attempt < 4; ++attempt) {
    GenericHyperplanes gh = moment_hyperplanes(k, dim, field, seed, attempt);
    try {
      std::map<Line, std::vector<int>> line_of_subset;
      std::map<std::vector<int>, int> line_index;
      std::vector<Line> all_lines;
      for (const auto& e : edge_set) {
        auto line = subset_intersection_line(field, dim, gh.planes, e);
        if (!line) throw DegenerateConstruction("edge hyperplanes do not meet in a line");
        if (!line_of_subset.emplace(*line, e).second) {
          throw DegenerateConstruction("two edges produce the same line");
        }
        all_lines.push_back(*line);
      }
      std::sort(all_lines.begin(), all_lines.end());
      for (std::size_t i = 0; i < all_lines.size(); ++i) {
        line_index[line_of_subset.at(all_lines[i])] = static_cast<int>(i);
      }

      JointsConfiguration cfg{field, dim, std::move(all_lines), {}};
      std::map<Point, Joint> joints;
      for_each_subset(k, dim, [&](const std::vector<int>& s) {
        std::vector<int> chosen;
        for (std::size_t drop = 0; drop < dim; ++drop) {
          std::vector<int> t;
          for (std::size_t i = 0; i < dim; ++i) {
            if (i != drop) t.push_back(s[i]);
          }
          auto it = line_index.find(t);
          if (it == line_index.end()) return;  // a required sub-intersection is missing
          chosen.push_back(it->second);
        }
        auto p = subset_intersection_point(field, dim, gh.planes, s);
        if (!p) throw DegenerateConstruction("hyperplane subset does not meet in a point");
        std::sort(chosen.begin(), chosen.end());
        if (!joints.emplace(*p, Joint{*p, std::move(chosen)}).second) {
          throw DegenerateConstruction("two hyperplane subsets meet in the same point");
        }
      });
      for (auto& [p, joint] : joints) cfg.joints.push_back(std::move(joint));
      for (std::size_t j = 0; j < cfg.joints.size(); ++j) {
        if (rank(Matrix::from_rows(field, cfg.joint_directions(j))) != dim) {
          throw DegenerateConstruction("joint directions are dependent");
        }
      }
      return cfg;
    } catch (const DegenerateConstruction& e) {
      last_failure = e.what();
    }
  }
  throw DegenerateConstruction("hypergraph construction failed after retries (" +
                               last_failure + ")");
}

MultijointsConfiguration generate_from_colored_graph(
    std::size_t k, const std::vector<std::vector<std::pair<int, int>>>& color_edges,
    const Field& field, std::uint64_t seed) {
  constexpr std::size_t dim = 3;
  if (color_edges.size() != 3) throw Error("need exactly three colors");
  std::vector<std::set<std::pair<int, int>>> colors(3);
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto [u, v] : color_edges[c]) {
      if (u == v || u < 0 || v < 0 || u >= static_cast<int>(k) || v >= static_cast<int>(k)) {
        throw Error("invalid edge");
      }
      colors[c].insert({std::min(u, v), std::max(u, v)});
    }
  }
  std::string last_failure;
  for (int attempt = 0; attempt < 4; ++attempt) {
    GenericHyperplanes gh = moment_hyperplanes(k, dim, field, seed, attempt);
    try {
      MultijointsConfiguration cfg{field, dim, {}, {}, {}};
      // family-major line list; index lookup per (color, edge)
      std::map<std::pair<int, std::pair<int, int>>, int> line_index;
      for (std::size_t c = 0; c < 3; ++c) {
        std::map<Line, std::pair<int, int>> canon;
        for (auto e : colors[c]) {
          auto line = subset_intersection_line(field, dim, gh.planes, {e.first, e.second});
          if (!line) throw DegenerateConstruction("edge planes do not meet in a line");
          if (!canon.emplace(*line, e).second) {
            throw DegenerateConstruction("two edges produce the same line");
          }
        }
        for (const auto& [line, e] : canon) {
          line_index[{static_cast<int>(c), e}] = static_cast<int>(cfg.lines.size());
          cfg.lines.push_back(line);
          cfg.line_family.push_back(static_cast<int>(c));
        }
      }
      std::map<Point, Joint> joints;
      for_each_subset(k, 3, [&](const std::vector<int>& s) {
        std::vector<std::pair<int, int>> pairs = {
            {s[0], s[1]}, {s[0], s[2]}, {s[1], s[2]}};
        // each color on exactly one edge of the triple
        std::vector<int> chosen;
        for (std::size_t c = 0; c < 3; ++c) {
          int found = -1;
          int count = 0;
          for (const auto& e : pairs) {
            if (colors[c].count(e)) {
              ++count;
              found = line_index.at({static_cast<int>(c), e});
            }
          }
          if (count != 1) return;
          chosen.push_back(found);
        }
        auto p = subset_intersection_point(field, dim, gh.planes, s);
        if (!p) throw DegenerateConstruction("triple does not meet in a point");
        std::vector<Vec> dirs;
        for (int idx : chosen) dirs.push_back(cfg.lines[idx].direction());
        if (rank(Matrix::from_rows(field, dirs)) != dim) {
          throw DegenerateConstruction("multijoint directions are dependent");
        }
        if (!joints.emplace(*p, Joint{*p, std::move(chosen)}).second) {
          throw DegenerateConstruction("two triples meet in the same point");
        }
      });
      for (auto& [p, joint] : joints) cfg.joints.push_back(std::move(joint));
      return cfg;
    } catch (const DegenerateConstruction& e) {
      last_failure = e.what();
    }
  }
  throw DegenerateConstruction("colored-graph construction failed after retries (" +
                               last_failure + ")");
}

MultijointsConfiguration generate_k4_blowup_multijoints(std::size_t k, const Field& field,
                                                        std::uint64_t seed) {
  if (k < 1) throw Error("blow-up factor must be positive");
  // K4 edge set decomposed into three perfect matchings, one per color.
  const std::vector<std::vector<std::pair<int, int>>> matchings = {
      {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  std::vector<std::vector<std::pair<int, int>>> color_edges(3);
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto [u, v] : matchings[c]) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          color_edges[c].emplace_back(u * static_cast<int>(k) + static_cast<int>(a),
                                      v * static_cast<int>(k) + static_cast<int>(b));
        }
      }
    }
  }
  return generate_from_colored_graph(4 * k, color_edges, field, seed);
}

FlatJointsConfiguration generate_flat_joints_config(std::size_t k, std::size_t dim,
                                                    std::size_t m, const Field& field,
                                                    std::uint64_t seed) {
  if (m == 0 || m >= dim) throw Error("flat configuration requires 0 < m < d");
  if (k < dim) throw Error("need at least d hyperplanes");
  std::string last_failure;
  for (int attempt = 0; attempt < 4; ++attempt) {
    GenericHyperplanes gh = moment_hyperplanes(k, dim, field, seed, attempt);
    try {
      FlatJointsConfiguration cfg{field, dim, m, {}, {}, {}};
      std::map<Line, int> line_index;
      std::map<Flat, int> flat_index;
      std::map<Point, Joint> joints;
      for_each_subset(k, dim, [&](const std::vector<int>& s) {
        auto p = subset_intersection_point(field, dim, gh.planes, s);
        if (!p) throw DegenerateConstruction("hyperplane subset does not meet in a point");
        // m chosen lines: drop one of the last m indices of s in turn
        std::vector<int> chosen_lines;
        for (std::size_t j = 0; j < m; ++j) {
          std::size_t drop = dim - m + j;
          std::vector<int> t;
          for (std::size_t i = 0; i < dim; ++i) {
            if (i != drop) t.push_back(s[i]);
          }
          auto line = subset_intersection_line(field, dim, gh.planes, t);
          if (!line) throw DegenerateConstruction("line subset does not meet in a line");
          auto it = line_index.find(*line);
          if (it == line_index.end()) {
            it = line_index.emplace(*line, static_cast<int>(cfg.lines.size())).first;
            cfg.lines.push_back(*line);
          }
          chosen_lines.push_back(it->second);
        }
        std::sort(chosen_lines.begin(), chosen_lines.end());
        // chosen flat: intersection of the last m hyperplanes of s
        std::vector<Hyperplane> cut;
        for (std::size_t i = dim - m; i < dim; ++i) cut.push_back(gh.planes[s[i]]);
        auto flat = intersect_hyperplanes(field, dim, cut);
        if (!flat || flat->flat_dim() != dim - m) {
          throw DegenerateConstruction("flat subset has wrong dimension");
        }
        auto fit = flat_index.find(*flat);
        if (fit == flat_index.end()) {
          fit = flat_index.emplace(*flat, static_cast<int>(cfg.flats.size())).first;
          cfg.flats.push_back(*flat);
        }
        Joint joint{*p, std::move(chosen_lines), fit->second};
        if (!joints.emplace(*p, std::move(joint)).second) {
          throw DegenerateConstruction("two hyperplane subsets meet in the same point");
        }
      });
      for (auto& [p, joint] : joints) cfg.joints.push_back(std::move(joint));
      cfg.validate();  // includes the span check at every joint
      return cfg;
    } catch (const DegenerateConstruction& e) {
      last_failure = e.what();
    } catch (const Error& e) {
      last_failure = e.what();
    }
  }
  throw DegenerateConstruction("flat construction failed after retries (" + last_failure +
                               ")");
}

namespace {

template <typename Config>
std::vector<Config> split_components(const Config& cfg, const JointsConfiguration& plain) {
  IncidenceGraph graph = incidence_graph(plain);
  std::vector<Config> parts(graph.component_count);
  std::vector<std::vector<int>> joints_of(graph.component_count);
  for (std::size_t j = 0; j < plain.joint_count(); ++j) {
    joints_of[graph.component[j]].push_back(static_cast<int>(j));
  }
  for (std::size_t comp = 0; comp < graph.component_count; ++comp) {
    Config& part = parts[comp];
    part.field = cfg.field;
    part.dim = cfg.dim;
    std::set<int> used;
    for (int j : joints_of[comp]) {
      for (int idx : cfg.joints[j].lines) used.insert(idx);
    }
    std::map<int, int> remap;
    for (int idx : used) {
      remap[idx] = static_cast<int>(part.lines.size());
      part.lines.push_back(cfg.lines[idx]);
      if constexpr (requires { part.line_family; }) {
        part.line_family.push_back(cfg.line_family[idx]);
      }
    }
    for (int j : joints_of[comp]) {
      Joint joint = cfg.joints[j];
      for (int& idx : joint.lines) idx = remap.at(idx);
      part.joints.push_back(std::move(joint));
    }
  }
  return parts;
}

}  // namespace

std::vector<JointsConfiguration> connected_components(const JointsConfiguration& cfg) {
  return split_components(cfg, cfg);
}

std::vector<MultijointsConfiguration> connected_components(
    const MultijointsConfiguration& cfg) {
  return split_components(cfg, cfg.as_joints_configuration());
}

AugmentedConfiguration augment_with_flat_lines(const FlatJointsConfiguration& cfg) {
  AugmentedConfiguration out;
  out.config.field = cfg.field;
  out.config.dim = cfg.dim;
  out.config.lines = cfg.lines;
  out.original_line_count = cfg.lines.size();
  for (std::size_t j = 0; j < cfg.joints.size(); ++j) {
    const Joint& joint = cfg.joints[j];
    const Flat& flat = cfg.flats[joint.flat];
    Joint augmented{joint.point, joint.lines, -1};
    std::vector<Vec> dirs;
    for (int idx : joint.lines) dirs.push_back(cfg.lines[idx].direction());
    for (const Vec& v : flat.basis()) {
      dirs.push_back(v);
      augmented.lines.push_back(static_cast<int>(out.config.lines.size()));
      out.config.lines.emplace_back(joint.point, v);
      out.new_line_joint.push_back(static_cast<int>(j));
    }
    if (rank(Matrix::from_rows(cfg.field, dirs)) != cfg.dim) {
      throw Error("augmented directions do not span at " + point_str(joint.point));
    }
    out.config.joints.push_back(std::move(augmented));
  }
  return out;
}

}  // namespace jointslab
