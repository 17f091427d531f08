#include <doctest.h>

#include "jointslab/pipeline.hpp"
#include "test_helpers.hpp"

using namespace jointslab;
using namespace jointslab::testing;

namespace {

const Field kF = Field::prime(10007);

const CheckRecord* find_check(const RunReport& report, const std::string& needle) {
  for (const auto& c : report.checks) {
    if (c.name.find(needle) != std::string::npos) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("full verification of the k=4 construction at n = 10") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  VerifyOptions opts;
  opts.n = 10;
  RunReport report = verify_configuration(cfg, opts);
  CHECK(report.all_pass());
  CHECK(report.solver.spread <= 1e-9);
  const CheckRecord* counting = find_check(report, "counting");
  REQUIRE(counting != nullptr);
  CHECK(counting->detail == "500 >= 220");  // 4 * 5^3 vs C(12,3)
}

TEST_CASE("verification of a configuration with no joints passes trivially") {
  JointsConfiguration cfg{kF, 3, {Line(pt(kF, {0, 0, 0}), vec(kF, {1, 0, 0}))}, {}};
  RunReport report = verify_configuration(cfg, {});
  CHECK(report.all_pass());
  // only the aggregate certificate is present; no component checks
  CHECK(report.checks.size() == 1);
  CHECK(report.checks[0].name == "bound certificate");

  FlatJointsConfiguration flat;
  flat.field = kF;
  flat.dim = 3;
  flat.m = 1;
  flat.flats = {Flat(pt(kF, {0, 0, 0}), {vec(kF, {1, 0, 0}), vec(kF, {0, 1, 0})})};
  RunReport flat_report = verify_configuration(flat, {});
  CHECK(flat_report.all_pass());
  CHECK(flat_report.checks.size() == 1);
}

TEST_CASE("k=5 at n=8 certifies the degree bound with 120 columns") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(5, 3, kF);
  VerifyOptions opts;
  opts.n = 8;
  RunReport report = verify_configuration(cfg, opts);
  CHECK(report.all_pass());
  const CheckRecord* kernel = find_check(report, "degree bound");
  REQUIRE(kernel != nullptr);
  CHECK(kernel->detail.find("120 coefficients") != std::string::npos);  // C(10,3)
  const CheckRecord* counting = find_check(report, "counting");
  REQUIRE(counting != nullptr);
  CHECK(counting->pass);
}

TEST_CASE("disconnected configurations are verified per component") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  std::vector<Line> lines = cfg.lines;
  Vec shift = vec(kF, {1000, 2000, 3000});
  for (const Line& l : cfg.lines) {
    lines.emplace_back(Point{vec_add(l.base().coords, shift)}, l.direction());
  }
  JointsConfiguration doubled = detect_joints(kF, 3, lines);
  VerifyOptions opts;
  opts.n = 6;
  RunReport report = verify_configuration(doubled, opts);
  CHECK(report.all_pass());
  CHECK(find_check(report, "component 0") != nullptr);
  CHECK(find_check(report, "component 1") != nullptr);
}

TEST_CASE("multijoints blow-up verification includes the conjectured bound") {
  MultijointsConfiguration cfg = generate_k4_blowup_multijoints(1, kF);
  VerifyOptions opts;
  opts.n = 6;
  RunReport report = verify_configuration(cfg, opts);
  CHECK(report.all_pass());
  const CheckRecord* conj = find_check(report, "conjectured sharp bound");
  REQUIRE(conj != nullptr);
  CHECK(conj->detail.find("tightness 1") != std::string::npos);
}

TEST_CASE("flat pipeline verifies rounding, kernels, and the subset identity") {
  FlatJointsConfiguration cfg = generate_flat_joints_config(5, 4, 2, kF);
  VerifyOptions opts;
  opts.n = 5;
  RunReport report = verify_configuration(cfg, opts);
  CHECK(report.all_pass());
  CHECK(find_check(report, "sum identity") != nullptr);
  CHECK(find_check(report, "flat degree bound") != nullptr);
  CHECK(find_check(report, "augmented degree bound") != nullptr);
}

TEST_CASE("verification modes stop at their stage") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  VerifyOptions opts;
  opts.n = 4;
  opts.mode = VerifyOptions::Mode::Weights;
  RunReport weights_only = verify_configuration(cfg, opts);
  CHECK(weights_only.all_pass());
  CHECK(find_check(weights_only, "rounding") == nullptr);
  CHECK(find_check(weights_only, "degree bound") == nullptr);

  opts.mode = VerifyOptions::Mode::Orders;
  RunReport orders = verify_configuration(cfg, opts);
  CHECK(find_check(orders, "rounding") != nullptr);
  CHECK(find_check(orders, "degree bound") == nullptr);

  CHECK(parse_mode("weights") == VerifyOptions::Mode::Weights);
  CHECK(parse_mode("all") == VerifyOptions::Mode::All);
  CHECK_THROWS_AS(parse_mode("bogus"), Error);
}

TEST_CASE("default n follows the joints-per-line rule with the degree cap") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  // 2 joints per line would give n = 20; the column budget caps it at 12
  RunReport report = verify_configuration(cfg, {});
  CHECK(report.all_pass());
  const CheckRecord* rounding = find_check(report, "rounding");
  REQUIRE(rounding != nullptr);
  CHECK(rounding->detail.find("n = 12") != std::string::npos);

  // a small explicit budget is respected too
  VerifyOptions opts;
  opts.column_budget = 60;  // C(8,3) = 56: n = 6 at d = 3
  RunReport capped = verify_configuration(cfg, opts);
  const CheckRecord* capped_rounding = find_check(capped, "rounding");
  REQUIRE(capped_rounding != nullptr);
  CHECK(capped_rounding->detail.find("n = 6") != std::string::npos);
}

TEST_CASE("reports serialize, parse, and render") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  VerifyOptions opts;
  opts.n = 4;
  RunReport report = verify_configuration(cfg, opts);
  std::string json = report_to_json(report);
  RunReport parsed = report_from_json(json);
  CHECK(parsed.all_pass() == report.all_pass());
  CHECK(parsed.checks.size() == report.checks.size());
  CHECK(parsed.input_digest == report.input_digest);
  std::string text = report_to_text(report);
  CHECK(text.find("ALL CHECKS PASSED") != std::string::npos);
  CHECK(text.find("[PASS]") != std::string::npos);
}

TEST_CASE("failed stages are recorded, not thrown") {
  // a line with no chosen joints wrecks the solver stage
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  cfg.joints.pop_back();  // a line loses both its joints; components drop it
  RunReport report = verify_configuration(cfg, {});
  // still produces a report; the aggregate certificate uses the full counts
  CHECK(!report.checks.empty());
}
