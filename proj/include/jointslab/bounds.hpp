#pragma once

#include <string>
#include <vector>

#include "jointslab/numeric.hpp"
#include "jointslab/weights.hpp"

namespace jointslab {

enum class TheoremId { MainJoints, Multijoints, FlatJoints, RainbowConjecture };

std::string theorem_name(TheoremId id);

// Exact integer comparison record. The integer form is equivalent to the
// stated real bound: both sides are raised to the (d-1)-th (resp. m-th)
// power, which preserves the inequality for nonnegative counts.
struct BoundCertificate {
  TheoremId id = TheoremId::MainJoints;
  mpz_class lhs, rhs;  // the bound holds iff lhs <= rhs
  bool holds = false;
  double tightness = 0.0;  // joint count over the real bound value
  std::string description;
};

// d^(d-1) J^(d-1) <= (d-1)! L^d, the integer form of
// J <= (d-1)!^{1/(d-1)} / d * L^{d/(d-1)}.
BoundCertificate certify_main_bound(const mpz_class& joints, const mpz_class& lines,
                                    unsigned dim);

// J^(d-1) <= d! L_1 ... L_d.
BoundCertificate certify_multijoints_bound(const mpz_class& joints,
                                           const std::vector<mpz_class>& family_sizes);

// J^m <= C(d,m) L^m F.
BoundCertificate certify_flat_bound(const mpz_class& joints, const mpz_class& lines,
                                    const mpz_class& flats, unsigned dim, unsigned m);

// J^2 <= 2 L_1 L_2 L_3 (the conjectured sharp d=3 multijoints constant).
BoundCertificate certify_rainbow_conjecture(const mpz_class& joints, const mpz_class& l1,
                                            const mpz_class& l2, const mpz_class& l3);

struct ChainLink {
  std::string name;
  double lhs = 0.0, rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
};

struct ChainReport {
  double common_value = 0.0;  // the balanced per-joint product W
  std::vector<ChainLink> links;
  bool all_hold = true;
};

// Numerically verifies each link of the product-balancing argument:
// d J W^{1/d} <= L, W <= L^d/(d^d J^d), 1/d! <= J W <= L^d/(d^d J^{d-1}).
// Requires balanced weights (common product up to tau); slack below -tau
// fails the link.
ChainReport verify_amgm_chain(const JointsConfiguration& cfg, const WeightAssignment& w,
                              double tau = 1e-9);

// Family-normalized variant: J W^{1/d} <= (L_1...L_d)^{1/d},
// W <= L_1...L_d/J^d, 1/d! <= J W <= L_1...L_d/J^{d-1}.
ChainReport verify_amgm_chain(const MultijointsConfiguration& cfg, const WeightAssignment& w,
                              double tau = 1e-9);

}  // namespace jointslab
