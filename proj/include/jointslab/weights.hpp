#pragma once

#include <vector>

#include "jointslab/configs.hpp"
#include "jointslab/vanishing.hpp"

namespace jointslab {

// Real weights for the balancing problem. Feasible assignments are
// parameterized as b_{p,l} = t_l + a_p, which keeps per-line sums at 1 and
// b - a constant along every line by construction; only b >= 0 must be
// maintained.
struct WeightAssignment {
  std::vector<double> a;               // per joint
  std::vector<double> line_t;          // per line: the common b - a value
  std::vector<std::vector<double>> b;  // [joint][slot], derived from a and line_t
  std::vector<double> c;               // per flat (flat case only)

  std::vector<double> joint_products() const;
  std::vector<double> joint_sums() const;
};

struct SolverOptions {
  double tau_spread = 1e-9;        // relative spread at convergence
  double tau_feasibility = 1e-12;  // tolerance for feasibility checks
  long max_iterations = 1000000;
  // Joints whose value exceeds max * (1 - delta * spread) count as
  // maximizing; the fraction keeps the minimizing joint outside the band at
  // every scale.
  double delta = 0.5;
};

struct BalanceResult {
  WeightAssignment weights;
  long iterations = 0;
  double spread = 0.0;  // final relative spread of the balanced quantity
  bool converged = false;
};

// Feasibility of (a)/(b) and b >= 0 up to tau; used by tests and the solver.
bool weights_feasible(const JointsConfiguration& cfg, const WeightAssignment& w, double tau);

// The uniform assignment b = 1/|l cap J|, a = 0. Throws EmptyLine when a
// line has no chosen joints.
WeightAssignment initial_feasible(const JointsConfiguration& cfg);

// Iterative balancing of the per-joint products on a connected
// configuration: repeatedly lowers a at the maximizing joints with a
// backtracking step size until the products agree to tau_spread. The
// maximum product never increases across accepted steps.
BalanceResult balance_products(const JointsConfiguration& cfg, const SolverOptions& opts = {});

// Same, throwing NoConvergence when the iteration budget is exhausted.
WeightAssignment balance_products_strict(const JointsConfiguration& cfg,
                                         const SolverOptions& opts = {});

struct SubsetBalanceResult {
  FlatJointsConfiguration sub;    // (J', L', F) with reindexed incidence
  std::vector<int> joint_subset;  // indices into the original joints
  std::vector<int> line_subset;   // indices into the original lines
  WeightAssignment weights;       // on the sub-configuration; c = s per flat
  double s = 0.0;                 // the common per-joint sum
  long iterations = 0;
  double spread = 0.0;
  bool converged = false;
};

// Balances the per-joint sums of line weights; when the solver stalls at a
// non-uniform local optimum it extracts the non-maximizing joints and their
// lines and recurses, which strictly increases |J'|/|L'|.
SubsetBalanceResult balance_sums_with_subsets(const FlatJointsConfiguration& cfg,
                                              const SolverOptions& opts = {});

// Integer orders from balanced weights: alpha_p = ceil(a_p n) and
// beta_{p,l} = ceil(t_l n) + alpha_p. Hypothesis (a) then holds with
// equality by construction; (b) and beta >= 0 are verified exactly and
// repaired by raising a line's ceil(t_l n) when floating-point rounding
// left a deficit.
VanishingOrders round_to_orders(const JointsConfiguration& cfg, const WeightAssignment& w,
                                long n);

// Flat variant: gamma_f = max(ceil(c_f n), largest per-joint beta sum on f),
// so hypothesis (c) holds exactly.
FlatVanishingOrders round_to_flat_orders(const FlatJointsConfiguration& cfg,
                                         const WeightAssignment& w, long n);

}  // namespace jointslab
