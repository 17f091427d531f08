#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jointslab/configs.hpp"
#include "jointslab/numeric.hpp"
#include "jointslab/polynomial.hpp"

namespace jointslab {

// Integer vanishing-order data for a joints configuration: a target degree
// threshold n, a per-joint shift alpha (may be negative), and a nonnegative
// order beta per (joint, chosen-line slot).
struct VanishingOrders {
  long n = 0;
  std::vector<long> alpha;
  std::vector<std::vector<long>> beta;  // [joint][slot]
};

// Flat variant: adds a nonnegative order gamma per flat.
struct FlatVanishingOrders {
  long n = 0;
  std::vector<long> alpha;
  std::vector<std::vector<long>> beta;  // [joint][slot], m slots per joint
  std::vector<long> gamma;
};

// Outcome of the exact hypothesis validation. `equality_form` reports
// whether beta - alpha is constant across all chosen joints of every line
// (the stricter variant), independently of validity.
struct HypothesisReport {
  bool valid = true;
  bool equality_form = true;
  std::vector<std::string> violations;  // "(a) line 3: ..." style, named clauses
};

HypothesisReport validate_orders(const JointsConfiguration& cfg, const VanishingOrders& ord);
HypothesisReport validate_orders(const FlatJointsConfiguration& cfg,
                                 const FlatVanishingOrders& ord);

// Throws HypothesesViolated with the first named violation.
void require_valid_orders(const JointsConfiguration& cfg, const VanishingOrders& ord);
void require_valid_orders(const FlatJointsConfiguration& cfg, const FlatVanishingOrders& ord);

struct ConstraintRowTag {
  enum class Source { Joint, Flat };
  Source source = Source::Joint;
  int index = 0;            // joint or flat index
  Exponent local_exponent;  // the local order the row kills
};

// Linear constraints on the coefficient vector of a polynomial of degree
// less than n: one column per monomial of total degree < n, so the column
// count is C(n+d-1, d). A polynomial vanishes to the given orders iff its
// coefficient vector lies in the kernel.
struct ConstraintSystem {
  long n = 0;
  std::size_t dim = 0;
  std::vector<Exponent> monomials;  // graded-lex order
  Matrix rows;
  std::vector<ConstraintRowTag> tags;
};

// All exponent vectors in d variables of total degree < n, graded-lex.
std::vector<Exponent> monomial_basis(std::size_t dim, long n);

// One row per (joint, local exponent w with w_i < beta_i for all i); the
// row count is sum_p prod_l beta_{p,l}.
ConstraintSystem assemble_joint_constraints(const JointsConfiguration& cfg,
                                            const VanishingOrders& ord);

// Per flat: after mapping the flat to {x_1 = ... = x_m = 0}, one row per
// monomial of total degree < n whose first-m exponent sum is below gamma_f.
ConstraintSystem assemble_flat_constraints(const FlatJointsConfiguration& cfg,
                                           const FlatVanishingOrders& ord);

struct DegreeCertificate {
  bool kernel_trivial = false;
  std::optional<Polynomial> witness;  // nonzero kernel element when non-trivial
};

// kernel_trivial certifies that no nonzero polynomial of degree < n
// satisfies the system; otherwise returns a witness from the kernel.
DegreeCertificate certify_degree_bound(const ConstraintSystem& cs);

struct CountingReport {
  mpz_class lhs, rhs;
  bool holds = false;
};

// Exact check of sum_p prod_l beta_{p,l} >= C(n+d-1, d). Throws
// HypothesesViolated for invalid orders and logic_error if the inequality
// fails on validated orders.
CountingReport check_counting_inequality(const JointsConfiguration& cfg,
                                         const VanishingOrders& ord);

// Flat variant: C(n+d-m-1, d-m) * sum_f C(gamma_f+m-1, m) >= C(n+d-1, d).
CountingReport check_counting_inequality(const FlatJointsConfiguration& cfg,
                                         const FlatVanishingOrders& ord);

// Orders for the augmented configuration: original slots keep their beta,
// each appended line gets beta = n on its single joint.
VanishingOrders extend_orders_for_augmentation(const AugmentedConfiguration& aug,
                                               const FlatVanishingOrders& ord);

}  // namespace jointslab
