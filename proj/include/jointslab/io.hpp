#pragma once

#include <string>
#include <variant>

#include "jointslab/combinatorics.hpp"
#include "jointslab/configs.hpp"

namespace jointslab {

using AnyConfiguration =
    std::variant<JointsConfiguration, MultijointsConfiguration, FlatJointsConfiguration>;

// Canonical JSON form: fixed key order, coordinates as exact decimal strings
// ("3/7" or "42 mod 10007", never floats). parse(serialize(x)) == x.
std::string serialize_config(const AnyConfiguration& cfg);

// Parses a configuration document. When the joints array is absent for the
// joints/multijoints kinds, the joints are detected from the lines.
AnyConfiguration parse_config(const std::string& text);

AnyConfiguration read_config_file(const std::string& path);
void write_config_file(const std::string& path, const AnyConfiguration& cfg);

using AnyGraph = std::variant<ColoredGraph, UniformHypergraph>;

std::string serialize_graph(const AnyGraph& g);
AnyGraph parse_graph(const std::string& text);
AnyGraph read_graph_file(const std::string& path);

// FNV-1a digest of the canonical serialization; used as the report's input id.
std::string content_digest(const std::string& text);

const Field& config_field(const AnyConfiguration& cfg);
std::size_t config_dim(const AnyConfiguration& cfg);
std::size_t config_joint_count(const AnyConfiguration& cfg);

}  // namespace jointslab
