#include "jointslab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jointslab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json coords_json(const Vec& v) {
  ordered_json arr = ordered_json::array();
  for (const Scalar& x : v) arr.push_back(x.str());
  return arr;
}

Vec parse_coords(const Field& field, const ordered_json& arr, std::size_t dim,
                 const std::string& what) {
  if (!arr.is_array() || arr.size() != dim) {
    throw ParseError(what + ": expected an array of " + std::to_string(dim) + " coordinates");
  }
  Vec v;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError(what + ": coordinates must be strings");
    v.push_back(Scalar::parse(field, item.get<std::string>()));
  }
  return v;
}

Field parse_field(const std::string& text) {
  if (text == "rational") return Field::rationals();
  if (text.rfind("prime:", 0) == 0) {
    return Field::prime(std::stoll(text.substr(6)));
  }
  throw ParseError("unknown field descriptor \"" + text + "\"");
}

ordered_json line_json(const Line& l, int family = -1) {
  ordered_json j;
  j["base"] = coords_json(l.base().coords);
  j["direction"] = coords_json(l.direction());
  if (family >= 0) j["family"] = family;
  return j;
}

ordered_json joint_json(const Joint& joint, bool with_flat) {
  ordered_json j;
  j["point"] = coords_json(joint.point.coords);
  j["lines"] = joint.lines;
  if (with_flat) j["flat"] = joint.flat;
  return j;
}

Joint parse_joint(const Field& field, const ordered_json& j, std::size_t dim, bool with_flat,
                  const std::string& what) {
  Joint joint;
  joint.point = Point{parse_coords(field, j.at("point"), dim, what)};
  if (!j.at("lines").is_array()) throw ParseError(what + ": lines must be an array");
  for (const auto& idx : j.at("lines")) joint.lines.push_back(idx.get<int>());
  if (with_flat) joint.flat = j.at("flat").get<int>();
  return joint;
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());  // message carries the byte position
  }
}

}  // namespace

std::string serialize_config(const AnyConfiguration& cfg) {
  ordered_json doc;
  doc["schema"] = 1;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, JointsConfiguration>) {
          doc["kind"] = "joints";
        } else if constexpr (std::is_same_v<T, MultijointsConfiguration>) {
          doc["kind"] = "multijoints";
        } else {
          doc["kind"] = "flatjoints";
        }
        doc["field"] = c.field.describe();
        doc["dimension"] = c.dim;
        if constexpr (std::is_same_v<T, FlatJointsConfiguration>) doc["m"] = c.m;
        ordered_json lines = ordered_json::array();
        for (std::size_t i = 0; i < c.lines.size(); ++i) {
          if constexpr (std::is_same_v<T, MultijointsConfiguration>) {
            lines.push_back(line_json(c.lines[i], c.line_family[i]));
          } else {
            lines.push_back(line_json(c.lines[i]));
          }
        }
        doc["lines"] = std::move(lines);
        if constexpr (std::is_same_v<T, FlatJointsConfiguration>) {
          ordered_json flats = ordered_json::array();
          for (const Flat& f : c.flats) {
            ordered_json fj;
            fj["base"] = coords_json(f.base().coords);
            ordered_json basis = ordered_json::array();
            for (const Vec& v : f.basis()) basis.push_back(coords_json(v));
            fj["basis"] = std::move(basis);
            flats.push_back(std::move(fj));
          }
          doc["flats"] = std::move(flats);
        }
        ordered_json joints = ordered_json::array();
        for (const Joint& joint : c.joints) {
          joints.push_back(joint_json(joint, std::is_same_v<T, FlatJointsConfiguration>));
        }
        doc["joints"] = std::move(joints);
      },
      cfg);
  return doc.dump(2) + "\n";
}

AnyConfiguration parse_config(const std::string& text) {
  ordered_json doc = parse_document(text);
  std::string kind = doc.at("kind").get<std::string>();
  Field field = parse_field(doc.at("field").get<std::string>());
  std::size_t dim = doc.at("dimension").get<std::size_t>();
  if (dim < 2 || dim > 8) throw ParseError("dimension must be between 2 and 8");

  if (kind == "joints") {
    JointsConfiguration cfg{field, dim, {}, {}};
    std::size_t i = 0;
    for (const auto& lj : doc.at("lines")) {
      std::string what = "lines[" + std::to_string(i++) + "]";
      cfg.lines.emplace_back(Point{parse_coords(field, lj.at("base"), dim, what)},
                             parse_coords(field, lj.at("direction"), dim, what));
    }
    if (!doc.contains("joints")) return detect_joints(field, dim, std::move(cfg.lines));
    std::size_t j = 0;
    for (const auto& jj : doc.at("joints")) {
      cfg.joints.push_back(
          parse_joint(field, jj, dim, false, "joints[" + std::to_string(j++) + "]"));
    }
    cfg.validate();
    return cfg;
  }

  if (kind == "multijoints") {
    std::vector<std::vector<Line>> families(dim);
    std::vector<std::pair<Line, int>> raw;
    std::size_t i = 0;
    for (const auto& lj : doc.at("lines")) {
      std::string what = "lines[" + std::to_string(i++) + "]";
      int family = lj.at("family").get<int>();
      if (family < 0 || family >= static_cast<int>(dim)) {
        throw ParseError(what + ": family out of range");
      }
      Line line(Point{parse_coords(field, lj.at("base"), dim, what)},
                parse_coords(field, lj.at("direction"), dim, what));
      families[family].push_back(line);
      raw.emplace_back(std::move(line), family);
    }
    if (!doc.contains("joints")) return detect_multijoints(field, dim, families);
    MultijointsConfiguration cfg{field, dim, {}, {}, {}};
    for (auto& [line, family] : raw) {
      cfg.lines.push_back(std::move(line));
      cfg.line_family.push_back(family);
    }
    std::size_t j = 0;
    for (const auto& jj : doc.at("joints")) {
      cfg.joints.push_back(
          parse_joint(field, jj, dim, false, "joints[" + std::to_string(j++) + "]"));
    }
    cfg.validate();
    return cfg;
  }

  if (kind == "flatjoints") {
    FlatJointsConfiguration cfg{field, dim, doc.at("m").get<std::size_t>(), {}, {}, {}};
    std::size_t i = 0;
    for (const auto& lj : doc.at("lines")) {
      std::string what = "lines[" + std::to_string(i++) + "]";
      cfg.lines.emplace_back(Point{parse_coords(field, lj.at("base"), dim, what)},
                             parse_coords(field, lj.at("direction"), dim, what));
    }
    i = 0;
    for (const auto& fj : doc.at("flats")) {
      std::string what = "flats[" + std::to_string(i++) + "]";
      std::vector<Vec> basis;
      for (const auto& bj : fj.at("basis")) basis.push_back(parse_coords(field, bj, dim, what));
      cfg.flats.emplace_back(Point{parse_coords(field, fj.at("base"), dim, what)},
                             std::move(basis));
    }
    std::size_t j = 0;
    for (const auto& jj : doc.at("joints")) {
      cfg.joints.push_back(
          parse_joint(field, jj, dim, true, "joints[" + std::to_string(j++) + "]"));
    }
    cfg.validate();
    return cfg;
  }

  throw ParseError("unknown configuration kind \"" + kind + "\"");
}

AnyConfiguration read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_config_file(const std::string& path, const AnyConfiguration& cfg) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize_config(cfg);
}

std::string serialize_graph(const AnyGraph& g) {
  ordered_json doc;
  doc["schema"] = 1;
  if (const auto* cg = std::get_if<ColoredGraph>(&g)) {
    doc["type"] = "colored-graph";
    doc["vertices"] = cg->vertices;
    ordered_json colors = ordered_json::array();
    for (const auto& edges : cg->color_edges) {
      ordered_json arr = ordered_json::array();
      for (auto [u, v] : edges) arr.push_back(ordered_json::array({u, v}));
      colors.push_back(std::move(arr));
    }
    doc["colors"] = std::move(colors);
  } else {
    const auto& h = std::get<UniformHypergraph>(g);
    doc["type"] = "hypergraph";
    doc["vertices"] = h.vertices;
    doc["arity"] = h.arity;
    doc["edges"] = h.edges;
  }
  return doc.dump(2) + "\n";
}

AnyGraph parse_graph(const std::string& text) {
  ordered_json doc = parse_document(text);
  std::string type = doc.at("type").get<std::string>();
  if (type == "colored-graph") {
    std::vector<std::vector<std::pair<int, int>>> colors;
    for (const auto& cj : doc.at("colors")) {
      std::vector<std::pair<int, int>> edges;
      for (const auto& ej : cj) {
        if (!ej.is_array() || ej.size() != 2) throw ParseError("edges must be vertex pairs");
        edges.emplace_back(ej[0].get<int>(), ej[1].get<int>());
      }
      colors.push_back(std::move(edges));
    }
    return ColoredGraph::make(doc.at("vertices").get<int>(), colors);
  }
  if (type == "hypergraph") {
    std::vector<std::vector<int>> edges;
    for (const auto& ej : doc.at("edges")) edges.push_back(ej.get<std::vector<int>>());
    return UniformHypergraph::make(doc.at("vertices").get<int>(), doc.at("arity").get<int>(),
                                   edges);
  }
  throw ParseError("unknown graph type \"" + type + "\"");
}

AnyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string content_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

const Field& config_field(const AnyConfiguration& cfg) {
  return std::visit([](const auto& c) -> const Field& { return c.field; }, cfg);
}

std::size_t config_dim(const AnyConfiguration& cfg) {
  return std::visit([](const auto& c) { return c.dim; }, cfg);
}

std::size_t config_joint_count(const AnyConfiguration& cfg) {
  return std::visit([](const auto& c) { return c.joints.size(); }, cfg);
}

}  // namespace jointslab
