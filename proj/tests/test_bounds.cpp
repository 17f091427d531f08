#include <doctest.h>

#include <cmath>
#include <random>

#include "jointslab/bounds.hpp"
#include "test_helpers.hpp"

using namespace jointslab;
using namespace jointslab::testing;

TEST_CASE("main bound certificate on the k=4 construction counts") {
  BoundCertificate cert = certify_main_bound(4, 6, 3);
  CHECK(cert.lhs == 144);  // 9 * 16
  CHECK(cert.rhs == 432);  // 2 * 216
  CHECK(cert.holds);
  CHECK(cert.tightness == doctest::Approx(4.0 / (std::sqrt(2.0) / 3.0 * std::pow(6.0, 1.5))));
}

TEST_CASE("main bound certificate in the plane") {
  BoundCertificate cert = certify_main_bound(1, 2, 2);
  CHECK(cert.lhs == 2);
  CHECK(cert.rhs == 4);
  CHECK(cert.holds);
}

TEST_CASE("rainbow conjecture is tight on the blow-up counts") {
  BoundCertificate cert = certify_rainbow_conjecture(4, 2, 2, 2);
  CHECK(cert.lhs == 16);
  CHECK(cert.rhs == 16);
  CHECK(cert.holds);
  CHECK(cert.tightness == doctest::Approx(1.0));
  for (long k : {2L, 3L, 5L}) {
    mpz_class l = 2 * k * k, j = 4 * k * k * k;
    BoundCertificate c = certify_rainbow_conjecture(j, l, l, l);
    CHECK(c.holds);
    CHECK(c.lhs == c.rhs);
  }
}

TEST_CASE("multijoints and flat certificates evaluate exactly") {
  BoundCertificate mj = certify_multijoints_bound(4, {mpz_class(2), mpz_class(2), mpz_class(2)});
  CHECK(mj.lhs == 16);
  CHECK(mj.rhs == 48);  // 3! * 8
  CHECK(mj.holds);

  BoundCertificate fl = certify_flat_bound(5, 7, 3, 4, 2);
  CHECK(fl.lhs == 25);
  CHECK(fl.rhs == 882);  // C(4,2) * 49 * 3
  CHECK(fl.holds);

  CHECK(certify_main_bound(0, 0, 3).holds);  // J = 0 is always fine
}

TEST_CASE("integer form agrees with high-precision real evaluation") {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<long> jl(0, 100000);
  std::uniform_int_distribution<unsigned> dd(2, 6);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    long j = jl(rng), l = jl(rng);
    unsigned d = dd(rng);
    BoundCertificate cert = certify_main_bound(j, l, d);
    // real form: J <= (d-1)!^{1/(d-1)} / d * L^{d/(d-1)}
    long double cd = powl(tgammal(static_cast<long double>(d)),
                          1.0L / static_cast<long double>(d - 1)) /
                     static_cast<long double>(d);
    long double bound = cd * powl(static_cast<long double>(l),
                                  static_cast<long double>(d) / (d - 1));
    long double gap = fabsl(static_cast<long double>(j) - bound);
    if (gap <= 1e-9L * std::max<long double>(1.0L, bound)) continue;  // too close to call
    ++checked;
    CHECK(cert.holds == (static_cast<long double>(j) <= bound));
  }
  CHECK(checked > 9000);  // the tie guard must not eat the sample
}

TEST_CASE("amgm chain is exactly tight on the k=4 construction") {
  Field f = Field::prime(10007);
  JointsConfiguration cfg = generate_generic_hyperplane_config(4, 3, f);
  WeightAssignment w = initial_feasible(cfg);  // already balanced at W = 1/8
  ChainReport rep = verify_amgm_chain(cfg, w);
  CHECK(rep.all_hold);
  CHECK(rep.common_value == doctest::Approx(0.125));
  REQUIRE(rep.links.size() == 4);
  CHECK(rep.links[0].lhs == doctest::Approx(6.0));  // 3 * 4 * (1/2)
  CHECK(rep.links[0].rhs == doctest::Approx(6.0));  // = L, equality
  CHECK(rep.links[1].slack == doctest::Approx(0.0));
  CHECK(rep.links[3].slack == doctest::Approx(0.0));
}

TEST_CASE("amgm chain on a single joint") {
  Field f = Field::prime(10007);
  JointsConfiguration cfg = detect_joints(
      f, 3,
      {Line(pt(f, {0, 0, 0}), vec(f, {1, 0, 0})), Line(pt(f, {0, 0, 0}), vec(f, {0, 1, 0})),
       Line(pt(f, {0, 0, 0}), vec(f, {0, 0, 1}))});
  WeightAssignment w = initial_feasible(cfg);
  ChainReport rep = verify_amgm_chain(cfg, w);
  CHECK(rep.all_hold);
  CHECK(rep.common_value == doctest::Approx(1.0));
  CHECK(rep.links[0].lhs == doctest::Approx(3.0));  // d J W^(1/d) = d
  CHECK(rep.links[0].rhs == doctest::Approx(3.0));  // = L = d
}

TEST_CASE("amgm chain rejects unbalanced weights") {
  Field f = Field::prime(10007);
  JointsConfiguration cfg = generate_generic_hyperplane_config(5, 3, f);
  WeightAssignment w = initial_feasible(cfg);
  w.b[0][0] = 0.9;
  CHECK_THROWS_AS(verify_amgm_chain(cfg, w), InfeasibleInput);
}

TEST_CASE("multijoints chain on the blow-up") {
  Field f = Field::prime(10007);
  MultijointsConfiguration cfg = generate_k4_blowup_multijoints(2, f);
  WeightAssignment w = initial_feasible(cfg.as_joints_configuration());
  ChainReport rep = verify_amgm_chain(cfg, w);
  CHECK(rep.all_hold);
  // every line has exactly 2k joints... LW chain: 1/d! <= J W
  CHECK(rep.links[2].lhs == doctest::Approx(1.0 / 6.0));
}
