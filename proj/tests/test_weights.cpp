#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jointslab/bounds.hpp"
#include "jointslab/weights.hpp"
#include "test_helpers.hpp"

using namespace jointslab;
using namespace jointslab::testing;

namespace {

const Field kF = Field::prime(10007);

// Three joints in a path: A on lines 0,1,2; B on 2,3,4; C on 4,5,6.
// Balanced value solves (1+a)/2 = (1-a)^2/4 with a = 2 - sqrt(5), giving
// W = (3 - sqrt(5))/2 at the outer joints.
JointsConfiguration chain_config() {
  std::vector<Line> lines = {
      Line(pt(kF, {0, 0, 0}), vec(kF, {1, 0, 0})), Line(pt(kF, {0, 0, 0}), vec(kF, {0, 1, 0})),
      Line(pt(kF, {0, 0, 0}), vec(kF, {0, 0, 1})),  // shared A-B
      Line(pt(kF, {0, 0, 1}), vec(kF, {1, 0, 0})), Line(pt(kF, {0, 0, 1}), vec(kF, {0, 1, 0})),
      Line(pt(kF, {0, 1, 1}), vec(kF, {1, 0, 0})), Line(pt(kF, {0, 1, 1}), vec(kF, {0, 0, 1}))};
  // A = origin, B = (0,0,1) via line 2 = z-axis, C = (0,1,1) via line 4 = y-dir at B
  JointsConfiguration cfg = detect_joints(kF, 3, lines);
  REQUIRE(cfg.joint_count() == 3);
  return cfg;
}

}  // namespace

TEST_CASE("uniform initial assignment") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  WeightAssignment w = initial_feasible(cfg);
  for (const auto& row : w.b) {
    for (double b : row) CHECK(b == doctest::Approx(0.5).epsilon(1e-15));
  }
  for (double a : w.a) CHECK(a == 0.0);
  CHECK(weights_feasible(cfg, w, 1e-12));

  // per-line sums are exactly 1
  auto per_line = cfg.chosen_joints_per_line();
  for (std::size_t l = 0; l < cfg.line_count(); ++l) {
    double sum = 0;
    for (auto [j, slot] : per_line[l]) sum += w.b[j][slot];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("a single joint gets unit weights") {
  JointsConfiguration cfg = detect_joints(
      kF, 3,
      {Line(pt(kF, {0, 0, 0}), vec(kF, {1, 0, 0})), Line(pt(kF, {0, 0, 0}), vec(kF, {0, 1, 0})),
       Line(pt(kF, {0, 0, 0}), vec(kF, {0, 0, 1}))});
  WeightAssignment w = initial_feasible(cfg);
  for (double b : w.b[0]) CHECK(b == 1.0);
  BalanceResult res = balance_products(cfg);
  CHECK(res.converged);
  CHECK(res.weights.joint_products()[0] == doctest::Approx(1.0));
}

TEST_CASE("initial assignment rejects lines without joints") {
  JointsConfiguration cfg{kF, 3, {Line(pt(kF, {0, 0, 0}), vec(kF, {1, 0, 0}))}, {}};
  CHECK_THROWS_AS(initial_feasible(cfg), EmptyLine);
}

TEST_CASE("balancing the symmetric k=4 construction") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  BalanceResult res = balance_products(cfg);
  CHECK(res.converged);
  CHECK(res.spread <= 1e-9);
  for (double w : res.weights.joint_products()) {
    CHECK(w == doctest::Approx(0.125).epsilon(1e-9));
  }
}

TEST_CASE("balancing a k=5 construction keeps the product sum above 1/d!") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(5, 3, kF);
  BalanceResult res = balance_products(cfg);
  CHECK(res.converged);
  double sum = 0;
  for (double w : res.weights.joint_products()) sum += w;
  CHECK(sum >= 1.0 / 6.0 - 1e-9);
}

TEST_CASE("balancing an asymmetric chain against the closed form") {
  JointsConfiguration cfg = chain_config();
  BalanceResult res = balance_products(cfg);
  REQUIRE(res.converged);
  CHECK(res.spread <= 1e-9);
  double expected = (3.0 - std::sqrt(5.0)) / 2.0;
  for (double w : res.weights.joint_products()) {
    CHECK(w == doctest::Approx(expected).epsilon(1e-6));
  }
  CHECK(weights_feasible(cfg, res.weights, 1e-9));

  // the maximum product never increased from the uniform start
  WeightAssignment init = initial_feasible(cfg);
  auto init_products = init.joint_products();
  auto final_products = res.weights.joint_products();
  CHECK(*std::max_element(final_products.begin(), final_products.end()) <=
        *std::max_element(init_products.begin(), init_products.end()) + 1e-12);
}

TEST_CASE("balancing converges quickly on irregular sub-configurations") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  int components_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    JointsConfiguration base = generate_generic_hyperplane_config(5 + trial % 3, 3, kF);
    std::vector<Line> lines;
    for (const Line& l : base.lines) {
      if (keep(rng) < 0.7) lines.push_back(l);
    }
    JointsConfiguration sub = detect_joints(kF, 3, lines);
    for (const auto& comp : connected_components(sub)) {
      ++components_checked;
      BalanceResult res = balance_products(comp);
      CHECK(res.converged);
      CHECK(res.spread <= 1e-9);
      CHECK(res.iterations <= 10000);
      double sum = 0;
      for (double w : res.weights.joint_products()) sum += w;
      CHECK(sum >= 1.0 / 6.0 - 1e-9);
      CHECK(verify_amgm_chain(comp, res.weights).all_hold);
    }
  }
  CHECK(components_checked > 20);
}

TEST_CASE("balance_products requires connectivity") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  std::vector<Line> lines = cfg.lines;
  Vec shift = vec(kF, {1000, 2000, 3000});
  for (const Line& l : cfg.lines) {
    lines.emplace_back(Point{vec_add(l.base().coords, shift)}, l.direction());
  }
  JointsConfiguration doubled = detect_joints(kF, 3, lines);
  CHECK_THROWS_AS(balance_products(doubled), NotConnected);
}

TEST_CASE("rounding the symmetric k=4 weights") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  WeightAssignment w = initial_feasible(cfg);

  SUBCASE("n = 10 gives beta = 5 everywhere") {
    VanishingOrders ord = round_to_orders(cfg, w, 10);
    CHECK(ord.n == 10);
    for (const auto& row : ord.beta) {
      for (long b : row) CHECK(b == 5);
    }
    for (long a : ord.alpha) CHECK(a == 0);
    auto per_line = cfg.chosen_joints_per_line();
    for (const auto& chosen : per_line) {
      long sum = 0;
      for (auto [j, slot] : chosen) sum += ord.beta[j][slot];
      CHECK(sum == 10);
    }
  }
  SUBCASE("n = 0 gives the vacuous all-zero orders") {
    VanishingOrders ord = round_to_orders(cfg, w, 0);
    for (const auto& row : ord.beta) {
      for (long b : row) CHECK(b == 0);
    }
  }
  SUBCASE("rounded orders validate exactly for many n") {
    for (long n : {1L, 2L, 3L, 7L, 10L, 100L, 1000L}) {
      VanishingOrders ord = round_to_orders(cfg, w, n);
      HypothesisReport rep = validate_orders(cfg, ord);
      CHECK(rep.valid);
      CHECK(rep.equality_form);
    }
  }
}

TEST_CASE("rounding solver output stays exactly valid") {
  JointsConfiguration cfg = chain_config();
  WeightAssignment w = balance_products_strict(cfg);
  for (long n : {1L, 5L, 37L, 100L}) {
    VanishingOrders ord = round_to_orders(cfg, w, n);
    CHECK(validate_orders(cfg, ord).valid);
  }
}

TEST_CASE("counting inequality survives a large rounding target") {
  // no matrix is built here: the counting check is pure integer arithmetic
  JointsConfiguration cfg = generate_generic_hyperplane_config(5, 3, kF);
  WeightAssignment w = balance_products_strict(cfg);
  VanishingOrders ord = round_to_orders(cfg, w, 100);
  CountingReport rep = check_counting_inequality(cfg, ord);
  CHECK(rep.holds);
  CHECK(rep.rhs == binomial(102, 3));
}

TEST_CASE("rounding rejects infeasible weights") {
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, kF);
  WeightAssignment w = initial_feasible(cfg);
  w.b[0][0] = 0.9;  // breaks the common-difference structure
  CHECK_THROWS_AS(round_to_orders(cfg, w, 10), InfeasibleInput);
}

TEST_CASE("sum balancing on a symmetric flat configuration") {
  // every joint chooses the same number of lines with identical incidence
  FlatJointsConfiguration cfg = generate_flat_joints_config(6, 4, 2, kF);
  SubsetBalanceResult res = balance_sums_with_subsets(cfg);
  CHECK(res.converged);
  CHECK(res.spread <= 1e-9);
  double ratio = static_cast<double>(res.sub.joint_count()) /
                 static_cast<double>(res.sub.line_count());
  double original = static_cast<double>(cfg.joint_count()) /
                    static_cast<double>(cfg.line_count());
  CHECK(ratio >= original - 1e-12);
  CHECK(std::abs(res.s * static_cast<double>(res.sub.joint_count()) -
                 static_cast<double>(res.sub.line_count())) <= 1e-6);
  for (double c : res.weights.c) CHECK(c == doctest::Approx(res.s));
}

TEST_CASE("sum balancing keeps the full sets on a symmetric instance") {
  // two equivalent joints on one shared line, one parallel flat each
  FlatJointsConfiguration cfg;
  cfg.field = kF;
  cfg.dim = 3;
  cfg.m = 1;
  cfg.lines = {Line(pt(kF, {0, 0, 0}), vec(kF, {0, 0, 1}))};
  cfg.flats = {Flat(pt(kF, {0, 0, 0}), {vec(kF, {1, 0, 0}), vec(kF, {0, 1, 0})}),
               Flat(pt(kF, {0, 0, 1}), {vec(kF, {1, 0, 0}), vec(kF, {0, 1, 0})})};
  cfg.joints = {Joint{pt(kF, {0, 0, 0}), {0}, 0}, Joint{pt(kF, {0, 0, 1}), {0}, 1}};
  cfg.validate();
  SubsetBalanceResult res = balance_sums_with_subsets(cfg);
  REQUIRE(res.converged);
  CHECK(res.sub.joint_count() == 2);  // nothing is extracted
  CHECK(res.sub.line_count() == 1);
  CHECK(res.s == doctest::Approx(0.5));  // s = |L|/|J|
}

TEST_CASE("sum balancing: single joint on m lines and one flat") {
  FlatJointsConfiguration cfg;
  cfg.field = kF;
  cfg.dim = 3;
  cfg.m = 2;
  cfg.lines = {Line(pt(kF, {0, 0, 0}), vec(kF, {1, 0, 0})),
               Line(pt(kF, {0, 0, 0}), vec(kF, {0, 1, 0}))};
  cfg.flats = {Flat(pt(kF, {0, 0, 0}), {vec(kF, {0, 0, 1})})};
  cfg.joints = {Joint{pt(kF, {0, 0, 0}), {0, 1}, 0}};
  cfg.validate();
  SubsetBalanceResult res = balance_sums_with_subsets(cfg);
  REQUIRE(res.converged);
  CHECK(res.s == doctest::Approx(2.0));  // each b = 1
  CHECK(res.weights.c[0] == doctest::Approx(2.0));
  CHECK(res.sub.joint_count() == 1);
}

TEST_CASE("flat rounding satisfies (c) exactly") {
  FlatJointsConfiguration cfg = generate_flat_joints_config(5, 4, 2, kF);
  SubsetBalanceResult res = balance_sums_with_subsets(cfg);
  REQUIRE(res.converged);
  for (long n : {2L, 5L, 9L}) {
    FlatVanishingOrders ord = round_to_flat_orders(res.sub, res.weights, n);
    HypothesisReport rep = validate_orders(res.sub, ord);
    CHECK(rep.valid);
  }
}

TEST_CASE("flat weight sums meet the binomial lower bound") {
  FlatJointsConfiguration cfg = generate_flat_joints_config(5, 4, 2, kF);
  SubsetBalanceResult res = balance_sums_with_subsets(cfg);
  REQUIRE(res.converged);
  double c_sum = 0;
  for (double c : res.weights.c) c_sum += c * c;  // m = 2
  CHECK(c_sum >= 1.0 / 6.0 - 1e-9);               // 1/C(4,2)
}
