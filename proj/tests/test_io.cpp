#include <doctest.h>

#include "jointslab/io.hpp"
#include "test_helpers.hpp"

using namespace jointslab;
using namespace jointslab::testing;

namespace {

const Field kF = Field::prime(10007);

}  // namespace

TEST_CASE("joints configuration round-trips through JSON") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(5, 3, kF);
  std::string text = serialize_config(cfg);
  AnyConfiguration parsed = parse_config(text);
  REQUIRE(std::holds_alternative<JointsConfiguration>(parsed));
  CHECK(std::get<JointsConfiguration>(parsed) == cfg);
  // canonical form is stable
  CHECK(serialize_config(parsed) == text);
}

TEST_CASE("rational coordinates round-trip exactly") {
  Field q = Field::rationals();
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, q);
  AnyConfiguration parsed = parse_config(serialize_config(cfg));
  CHECK(std::get<JointsConfiguration>(parsed) == cfg);
}

TEST_CASE("multijoints configuration round-trips with families") {
  MultijointsConfiguration cfg = generate_k4_blowup_multijoints(2, kF);
  AnyConfiguration parsed = parse_config(serialize_config(cfg));
  REQUIRE(std::holds_alternative<MultijointsConfiguration>(parsed));
  CHECK(std::get<MultijointsConfiguration>(parsed) == cfg);
}

TEST_CASE("flat configuration round-trips with flats and m") {
  FlatJointsConfiguration cfg = generate_flat_joints_config(5, 4, 2, kF);
  AnyConfiguration parsed = parse_config(serialize_config(cfg));
  REQUIRE(std::holds_alternative<FlatJointsConfiguration>(parsed));
  CHECK(std::get<FlatJointsConfiguration>(parsed) == cfg);
}

TEST_CASE("a document without joints triggers detection") {
  std::string text = R"({
    "schema": 1, "kind": "joints", "field": "prime:10007", "dimension": 3,
    "lines": [
      {"base": ["0","0","0"], "direction": ["1","0","0"]},
      {"base": ["0","0","0"], "direction": ["0","1","0"]},
      {"base": ["0","0","0"], "direction": ["0","0","1"]}
    ]
  })";
  AnyConfiguration parsed = parse_config(text);
  const auto& cfg = std::get<JointsConfiguration>(parsed);
  REQUIRE(cfg.joint_count() == 1);
  CHECK(cfg.joints[0].point == pt(kF, {0, 0, 0}));
}

TEST_CASE("parse errors are positioned and typed") {
  CHECK_THROWS_AS(parse_config("{not json"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"schema":1,"kind":"joints","field":"prime:9",
    "dimension":3,"lines":[]})"),
                  Error);  // 9 is not prime
  CHECK_THROWS_AS(parse_config(R"({"schema":1,"kind":"mystery","field":"prime:7",
    "dimension":3,"lines":[]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_config(R"({"schema":1,"kind":"joints","field":"prime:7",
    "dimension":1,"lines":[]})"),
                  ParseError);
  // coordinate arity mismatch
  CHECK_THROWS_AS(parse_config(R"({"schema":1,"kind":"joints","field":"prime:7",
    "dimension":3,"lines":[{"base":["0","0"],"direction":["1","0","0"]}]})"),
                  ParseError);
}

TEST_CASE("semantic validation failures surface on parse") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  std::string text = serialize_config(cfg);
  // corrupt a joint's point so a chosen line misses it
  std::string bad = text;
  auto pos = bad.find("\"point\"");
  REQUIRE(pos != std::string::npos);
  pos = bad.find('"', bad.find('[', pos));
  bad.replace(pos, bad.find('"', pos + 1) - pos + 1, "\"1234 mod 10007\"");
  CHECK_THROWS_AS(parse_config(bad), Error);
}

TEST_CASE("graphs round-trip") {
  ColoredGraph g = ColoredGraph::make(
      4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}});
  AnyGraph parsed = parse_graph(serialize_graph(g));
  REQUIRE(std::holds_alternative<ColoredGraph>(parsed));
  CHECK(std::get<ColoredGraph>(parsed).color_edges == g.color_edges);

  UniformHypergraph h = UniformHypergraph::make(5, 2, {{0, 1}, {1, 2}});
  AnyGraph parsed_h = parse_graph(serialize_graph(h));
  REQUIRE(std::holds_alternative<UniformHypergraph>(parsed_h));
  CHECK(std::get<UniformHypergraph>(parsed_h).edges == h.edges);
}

TEST_CASE("digest is deterministic and content-sensitive") {
  std::string a = content_digest("hello");
  CHECK(a == content_digest("hello"));
  CHECK(a != content_digest("hello!"));
  CHECK(a.rfind("fnv1a:", 0) == 0);
}
