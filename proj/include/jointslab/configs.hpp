#pragma once

#include <cstdint>
#include <vector>

#include "jointslab/geometry.hpp"

namespace jointslab {

// A joint together with its chosen incident objects. `lines` holds indices
// into the owning configuration's line list, ordered by canonical key; the
// chosen directions always have full rank.
struct Joint {
  Point point;
  std::vector<int> lines;
  int flat = -1;  // chosen flat index; -1 outside flat configurations

  friend bool operator==(const Joint&, const Joint&) = default;
};

struct JointsConfiguration {
  Field field;
  std::size_t dim = 0;
  std::vector<Line> lines;    // sorted by canonical key (generators/detector);
                              // augmented configurations may append duplicates
  std::vector<Joint> joints;  // sorted by point

  std::size_t line_count() const { return lines.size(); }
  std::size_t joint_count() const { return joints.size(); }

  // Chosen directions at a joint, in slot order.
  std::vector<Vec> joint_directions(std::size_t j) const;
  // For each line, the (joint, slot) pairs where it is a chosen line.
  std::vector<std::vector<std::pair<int, int>>> chosen_joints_per_line() const;

  // Checks the structural invariants; throws Error on violation.
  void validate() const;

  friend bool operator==(const JointsConfiguration&, const JointsConfiguration&) = default;
};

struct MultijointsConfiguration {
  Field field;
  std::size_t dim = 0;
  std::vector<Line> lines;       // flattened; sorted by (family, canonical key)
  std::vector<int> line_family;  // family of each line, in [0, dim)
  std::vector<Joint> joints;     // slot i holds a line of family i

  std::size_t line_count() const { return lines.size(); }
  std::size_t joint_count() const { return joints.size(); }

  std::vector<std::size_t> family_sizes() const;
  // Forgets family labels; the incidence structure carries over unchanged.
  JointsConfiguration as_joints_configuration() const;
  void validate() const;

  friend bool operator==(const MultijointsConfiguration&, const MultijointsConfiguration&) =
      default;
};

// (1^m, d-m) configuration: each joint lies on m chosen lines and one chosen
// (d-m)-flat whose directions jointly span F^d.
struct FlatJointsConfiguration {
  Field field;
  std::size_t dim = 0;
  std::size_t m = 0;
  std::vector<Line> lines;
  std::vector<Flat> flats;  // all of dimension d-m
  std::vector<Joint> joints;

  std::size_t line_count() const { return lines.size(); }
  std::size_t joint_count() const { return joints.size(); }

  std::vector<std::vector<std::pair<int, int>>> chosen_joints_per_line() const;
  std::vector<std::vector<int>> chosen_joints_per_flat() const;
  void validate() const;

  friend bool operator==(const FlatJointsConfiguration&, const FlatJointsConfiguration&) =
      default;
};

// Joints as vertices, adjacent when they share a chosen line.
struct IncidenceGraph {
  std::size_t joint_count = 0;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> component;  // component label per joint
  std::size_t component_count = 0;
};

IncidenceGraph incidence_graph(const JointsConfiguration& cfg);

// ---- Detection ----

// All pairwise intersection points of the (deduplicated) lines; a point is a
// joint iff d incident lines have independent directions. The chosen lines
// are the lexicographically smallest full-rank subset in canonical order.
JointsConfiguration detect_joints(const Field& field, std::size_t dim, std::vector<Line> lines);

// A point is a multijoint iff every family has exactly one line through it
// and the d chosen lines have independent directions.
MultijointsConfiguration detect_multijoints(const Field& field, std::size_t dim,
                                            const std::vector<std::vector<Line>>& families);

// ---- Generators ----

// k generic hyperplanes with moment-curve normals; lines from (d-1)-wise and
// joints from d-wise intersections. Throws DegenerateConstruction when a
// genericity assertion fails after retries.
JointsConfiguration generate_generic_hyperplane_config(std::size_t k, std::size_t dim,
                                                       const Field& field,
                                                       std::uint64_t seed = 0);

// Lines named by the (d-1)-subsets in `edges`; joints are the d-subsets all
// of whose (d-1)-subsets are present.
JointsConfiguration generate_from_hypergraph(std::size_t k, std::size_t dim,
                                             const std::vector<std::vector<int>>& edges,
                                             const Field& field, std::uint64_t seed = 0);

// d=3 encoding: vertices are generic planes, an edge of color i is a line of
// family i. Joints are the triples whose edges carry each color exactly once.
MultijointsConfiguration generate_from_colored_graph(
    std::size_t k, const std::vector<std::vector<std::pair<int, int>>>& color_edges,
    const Field& field, std::uint64_t seed = 0);

// K4 with its three perfect matchings as colors, each vertex blown up into k
// generic planes: 2k^2 lines per family and 4k^3 multijoints.
MultijointsConfiguration generate_k4_blowup_multijoints(std::size_t k, const Field& field,
                                                        std::uint64_t seed = 0);

// (1^m, d-m) instances from k generic hyperplanes: joints are d-wise
// intersections; each joint chooses m lines ((d-1)-wise intersections) and
// the (d-m)-flat spanned against them.
FlatJointsConfiguration generate_flat_joints_config(std::size_t k, std::size_t dim,
                                                    std::size_t m, const Field& field,
                                                    std::uint64_t seed = 0);

// ---- Transformations ----

// Partition of the joints by incidence-graph component; each component keeps
// the lines chosen by its joints.
std::vector<JointsConfiguration> connected_components(const JointsConfiguration& cfg);

std::vector<MultijointsConfiguration> connected_components(const MultijointsConfiguration& cfg);

// Result of completing every (joint, chosen flat) pair with d-m new lines
// inside the flat: a plain joints configuration whose first lines coincide
// with the flat configuration's lines. Appended lines are never merged with
// existing ones; each has exactly one chosen joint.
struct AugmentedConfiguration {
  JointsConfiguration config;
  std::size_t original_line_count = 0;
  std::vector<int> new_line_joint;  // owning joint of each appended line
};

AugmentedConfiguration augment_with_flat_lines(const FlatJointsConfiguration& cfg);

}  // namespace jointslab
