#include "jointslab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace jointslab {

namespace {

constexpr double kEpsMin = 1e-18;
constexpr double kEpsMax = 0.25;
// Weights below this are treated as sitting on the b = 0 boundary when
// deciding whether a perturbation can still make progress.
constexpr double kWeightFloor = 1e-13;

std::vector<double> products_of(const std::vector<std::vector<double>>& b) {
  std::vector<double> v(b.size(), 1.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (double x : b[j]) v[j] *= x;
  }
  return v;
}

std::vector<double> sums_of(const std::vector<std::vector<double>>& b) {
  std::vector<double> v(b.size(), 0.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (double x : b[j]) v[j] += x;
  }
  return v;
}

// Incidence view shared by the joints and flat solvers.
struct SolverView {
  std::size_t joint_count = 0;
  std::vector<std::vector<int>> joint_lines;                  // [joint][slot] -> line
  std::vector<std::vector<std::pair<int, int>>> line_chosen;  // [line] -> (joint, slot)
};

void compute_t(const SolverView& view, const std::vector<double>& a, std::vector<double>& t) {
  for (std::size_t l = 0; l < view.line_chosen.size(); ++l) {
    double sum_a = 0.0;
    for (auto [j, slot] : view.line_chosen[l]) sum_a += a[j];
    t[l] = (1.0 - sum_a) / static_cast<double>(view.line_chosen[l].size());
  }
}

void compute_b(const SolverView& view, const std::vector<double>& a,
               const std::vector<double>& t, std::vector<std::vector<double>>& b) {
  for (std::size_t j = 0; j < view.joint_count; ++j) {
    for (std::size_t slot = 0; slot < view.joint_lines[j].size(); ++slot) {
      b[j][slot] = t[view.joint_lines[j][slot]] + a[j];
    }
  }
}

double min_entry(const std::vector<std::vector<double>>& b) {
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& row : b) {
    for (double x : row) mn = std::min(mn, x);
  }
  return mn;
}

void check_feasibility_drift(const SolverView& view,
                             const std::vector<std::vector<double>>& b, double tau) {
  for (std::size_t l = 0; l < view.line_chosen.size(); ++l) {
    double sum = 0.0;
    for (auto [j, slot] : view.line_chosen[l]) sum += b[j][slot];
    if (std::abs(sum - 1.0) > tau) {
      throw std::logic_error("per-line weight sum drifted from 1");
    }
  }
}

struct CoreResult {
  std::vector<double> a, t;
  std::vector<std::vector<double>> b;
  long iterations = 0;
  double spread = 0.0;
  bool converged = false;
  bool stalled = false;  // backtracking exhausted at a boundary optimum
};

// The perturbation scheme: lower a at every joint within a relative delta of
// the maximum value, with a backtracking step size; a step is accepted only
// if all weights stay nonnegative and the maximum value does not increase.
CoreResult balance_core(const SolverView& view, const SolverOptions& opts, bool product_mode) {
  for (const auto& chosen : view.line_chosen) {
    if (chosen.empty()) throw EmptyLine("line has no chosen joints");
  }
  if (view.joint_count == 0) {
    CoreResult res;
    res.converged = true;
    return res;
  }
  CoreResult res;
  res.a.assign(view.joint_count, 0.0);
  res.t.assign(view.line_chosen.size(), 0.0);
  res.b.assign(view.joint_count, {});
  for (std::size_t j = 0; j < view.joint_count; ++j) {
    res.b[j].assign(view.joint_lines[j].size(), 0.0);
  }
  compute_t(view, res.a, res.t);
  compute_b(view, res.a, res.t, res.b);

  std::vector<double> trial_a(view.joint_count), trial_t(res.t);
  auto trial_b = res.b;
  double eps = 0.05;
  double best_spread = std::numeric_limits<double>::infinity();

  while (true) {
    std::vector<double> value = product_mode ? products_of(res.b) : sums_of(res.b);
    double max_v = *std::max_element(value.begin(), value.end());
    double min_v = *std::min_element(value.begin(), value.end());
    double spread = (max_v - min_v) / std::max(max_v, 1e-300);
    res.spread = spread;
    best_spread = std::min(best_spread, spread);
    if (spread <= opts.tau_spread) {
      res.converged = true;
      return res;
    }
    if (res.iterations >= opts.max_iterations) {
      res.spread = best_spread;
      return res;
    }

    // The maximizing band scales with the spread so the minimizing joint
    // always stays outside it: a fixed narrow band makes near-maximizing
    // joints absorb each step and progress crawls.
    double delta_eff = spread * opts.delta;
    std::vector<int> maximizing;
    std::vector<char> is_max(view.joint_count, 0);
    for (std::size_t j = 0; j < view.joint_count; ++j) {
      if (value[j] >= max_v * (1.0 - delta_eff)) {
        maximizing.push_back(static_cast<int>(j));
        is_max[j] = 1;
      }
    }

    // The perturbation only makes progress through a line carrying positive
    // weight at a maximizing joint next to a non-maximizing one; without
    // such a line the boundary condition for subset extraction holds.
    bool actionable = false;
    for (const auto& chosen : view.line_chosen) {
      bool max_positive = false, has_other = false;
      for (auto [j, slot] : chosen) {
        if (is_max[j]) {
          if (res.b[j][slot] > kWeightFloor) max_positive = true;
        } else {
          has_other = true;
        }
      }
      if (max_positive && has_other) {
        actionable = true;
        break;
      }
    }
    if (!actionable) {
      res.stalled = true;
      return res;
    }

    bool accepted = false;
    while (eps >= kEpsMin) {
      trial_a = res.a;
      for (int j : maximizing) trial_a[j] -= eps;
      compute_t(view, trial_a, trial_t);
      compute_b(view, trial_a, trial_t, trial_b);
      if (min_entry(trial_b) < 0.0) {
        eps /= 2.0;
        continue;
      }
      std::vector<double> trial_value = product_mode ? products_of(trial_b) : sums_of(trial_b);
      double trial_max = *std::max_element(trial_value.begin(), trial_value.end());
      if (trial_max > max_v * (1.0 + 1e-13)) {
        eps /= 2.0;
        continue;
      }
      accepted = true;
      break;
    }
    if (!accepted) {
      res.spread = best_spread;
      res.stalled = true;
      return res;
    }

    res.a.swap(trial_a);
    // normalize the global shift; b is invariant under it
    double shift = *std::max_element(res.a.begin(), res.a.end());
    for (double& x : res.a) x -= shift;
    compute_t(view, res.a, res.t);
    compute_b(view, res.a, res.t, res.b);
    check_feasibility_drift(view, res.b, opts.tau_feasibility);
    eps = std::min(eps * 1.25, kEpsMax);
    ++res.iterations;
  }
}

SolverView make_view(const JointsConfiguration& cfg) {
  SolverView view;
  view.joint_count = cfg.joint_count();
  view.joint_lines.reserve(cfg.joint_count());
  for (const Joint& j : cfg.joints) view.joint_lines.push_back(j.lines);
  view.line_chosen = cfg.chosen_joints_per_line();
  return view;
}

SolverView make_view(const FlatJointsConfiguration& cfg) {
  SolverView view;
  view.joint_count = cfg.joint_count();
  view.joint_lines.reserve(cfg.joint_count());
  for (const Joint& j : cfg.joints) view.joint_lines.push_back(j.lines);
  view.line_chosen = cfg.chosen_joints_per_line();
  return view;
}

WeightAssignment to_assignment(CoreResult&& core) {
  WeightAssignment w;
  w.a = std::move(core.a);
  w.line_t = std::move(core.t);
  w.b = std::move(core.b);
  return w;
}

}  // namespace

std::vector<double> WeightAssignment::joint_products() const { return products_of(b); }

std::vector<double> WeightAssignment::joint_sums() const { return sums_of(b); }

bool weights_feasible(const JointsConfiguration& cfg, const WeightAssignment& w, double tau) {
  if (w.a.size() != cfg.joint_count() || w.b.size() != cfg.joint_count() ||
      w.line_t.size() != cfg.line_count()) {
    return false;
  }
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    if (w.b[j].size() != cfg.joints[j].lines.size()) return false;
    for (std::size_t slot = 0; slot < w.b[j].size(); ++slot) {
      if (w.b[j][slot] < -tau) return false;
      // (a) in equality form: b - a matches the line's common value
      if (std::abs(w.b[j][slot] - w.a[j] - w.line_t[cfg.joints[j].lines[slot]]) > tau) {
        return false;
      }
    }
  }
  for (std::size_t l = 0; l < cfg.line_count(); ++l) {
    double sum = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
      for (std::size_t slot = 0; slot < cfg.joints[j].lines.size(); ++slot) {
        if (cfg.joints[j].lines[slot] == static_cast<int>(l)) {
          sum += w.b[j][slot];
          any = true;
        }
      }
    }
    if (any && std::abs(sum - 1.0) > tau) return false;
  }
  return true;
}

WeightAssignment initial_feasible(const JointsConfiguration& cfg) {
  SolverView view = make_view(cfg);
  for (std::size_t l = 0; l < view.line_chosen.size(); ++l) {
    if (view.line_chosen[l].empty()) {
      throw EmptyLine("line " + std::to_string(l) + " has no chosen joints");
    }
  }
  CoreResult core;
  core.a.assign(view.joint_count, 0.0);
  core.t.assign(view.line_chosen.size(), 0.0);
  core.b.assign(view.joint_count, {});
  for (std::size_t j = 0; j < view.joint_count; ++j) {
    core.b[j].assign(view.joint_lines[j].size(), 0.0);
  }
  compute_t(view, core.a, core.t);
  compute_b(view, core.a, core.t, core.b);
  return to_assignment(std::move(core));
}

BalanceResult balance_products(const JointsConfiguration& cfg, const SolverOptions& opts) {
  if (incidence_graph(cfg).component_count > 1) throw NotConnected();
  CoreResult core = balance_core(make_view(cfg), opts, /*product_mode=*/true);
  BalanceResult out;
  out.iterations = core.iterations;
  out.spread = core.spread;
  out.converged = core.converged;
  out.weights = to_assignment(std::move(core));
  return out;
}

WeightAssignment balance_products_strict(const JointsConfiguration& cfg,
                                         const SolverOptions& opts) {
  BalanceResult res = balance_products(cfg, opts);
  if (!res.converged) {
    throw NoConvergence("product balancing did not reach the target spread", res.spread);
  }
  return std::move(res.weights);
}

namespace {

FlatJointsConfiguration restrict_flat_config(const FlatJointsConfiguration& cfg,
                                             const std::vector<int>& joints_keep,
                                             std::vector<int>& line_map_out) {
  FlatJointsConfiguration sub;
  sub.field = cfg.field;
  sub.dim = cfg.dim;
  sub.m = cfg.m;
  sub.flats = cfg.flats;  // the flat set is never shrunk
  std::set<int> used;
  for (int j : joints_keep) {
    for (int idx : cfg.joints[j].lines) used.insert(idx);
  }
  std::vector<int> remap(cfg.lines.size(), -1);
  for (int idx : used) {
    remap[idx] = static_cast<int>(sub.lines.size());
    sub.lines.push_back(cfg.lines[idx]);
    line_map_out.push_back(idx);
  }
  for (int j : joints_keep) {
    Joint joint = cfg.joints[j];
    for (int& idx : joint.lines) idx = remap[idx];
    sub.joints.push_back(std::move(joint));
  }
  return sub;
}

}  // namespace

SubsetBalanceResult balance_sums_with_subsets(const FlatJointsConfiguration& cfg,
                                              const SolverOptions& opts) {
  if (cfg.joint_count() == 0) {
    throw InfeasibleInput("sum balancing needs at least one joint");
  }
  SubsetBalanceResult out;
  FlatJointsConfiguration current = cfg;
  std::vector<int> joint_map(cfg.joint_count());
  std::vector<int> line_map(cfg.line_count());
  for (std::size_t i = 0; i < joint_map.size(); ++i) joint_map[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < line_map.size(); ++i) line_map[i] = static_cast<int>(i);
  long total_iterations = 0;

  while (true) {
    CoreResult core = balance_core(make_view(current), opts, /*product_mode=*/false);
    total_iterations += core.iterations;
    if (core.converged) {
      std::vector<double> sums = sums_of(core.b);
      double s = *std::max_element(sums.begin(), sums.end());
      out.sub = std::move(current);
      out.joint_subset = std::move(joint_map);
      out.line_subset = std::move(line_map);
      out.s = s;
      out.iterations = total_iterations;
      out.spread = core.spread;
      out.converged = true;
      out.weights = to_assignment(std::move(core));
      out.weights.c.assign(out.sub.flats.size(), s);
      // The extracted subsets must not lower the joint/line ratio.
      double original_ratio =
          static_cast<double>(cfg.joint_count()) / static_cast<double>(cfg.line_count());
      double sub_ratio = static_cast<double>(out.sub.joint_count()) /
                         static_cast<double>(out.sub.line_count());
      if (sub_ratio + 1e-12 < original_ratio) {
        throw NoConvergence("subset extraction failed to preserve the joint/line ratio",
                            out.spread);
      }
      return out;
    }
    if (total_iterations >= opts.max_iterations && !core.stalled) {
      throw NoConvergence("sum balancing exhausted its iteration budget", core.spread);
    }
    // Stalled at a non-uniform optimum: keep the non-maximizing joints and
    // the lines through them, then balance the smaller configuration.
    std::vector<double> sums = sums_of(core.b);
    double max_v = *std::max_element(sums.begin(), sums.end());
    double min_v = *std::min_element(sums.begin(), sums.end());
    double spread = (max_v - min_v) / std::max(max_v, 1e-300);
    double delta_eff = spread * opts.delta;  // complement of the solver's band
    std::vector<int> keep;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (sums[j] < max_v * (1.0 - delta_eff)) keep.push_back(static_cast<int>(j));
    }
    if (keep.empty() || keep.size() == sums.size()) {
      throw NoConvergence("sum balancing stalled without a separating subset", spread);
    }
    std::vector<int> new_line_map;
    FlatJointsConfiguration next = restrict_flat_config(current, keep, new_line_map);
    std::vector<int> new_joint_map;
    for (int j : keep) new_joint_map.push_back(joint_map[j]);
    std::vector<int> mapped_lines;
    for (int l : new_line_map) mapped_lines.push_back(line_map[l]);
    joint_map = std::move(new_joint_map);
    line_map = std::move(mapped_lines);
    current = std::move(next);
  }
}

VanishingOrders round_to_orders(const JointsConfiguration& cfg, const WeightAssignment& w,
                                long n) {
  if (n < 0) throw InfeasibleInput("rounding target must be nonnegative");
  if (!weights_feasible(cfg, w, 1e-9)) {
    throw InfeasibleInput("weights are not feasible in equality form");
  }
  VanishingOrders ord;
  ord.n = n;
  ord.alpha.resize(cfg.joint_count());
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    ord.alpha[j] = std::llround(std::ceil(w.a[j] * static_cast<double>(n)));
  }
  std::vector<long> line_order(cfg.line_count());
  for (std::size_t l = 0; l < cfg.line_count(); ++l) {
    line_order[l] = std::llround(std::ceil(w.line_t[l] * static_cast<double>(n)));
  }
  // Exact repairs: beta = T_l + alpha_p must be nonnegative and sum to >= n
  // along each line. Raising a line's T preserves (a) in equality form.
  auto per_line = cfg.chosen_joints_per_line();
  for (std::size_t l = 0; l < cfg.line_count(); ++l) {
    for (auto [j, slot] : per_line[l]) {
      line_order[l] = std::max(line_order[l], -ord.alpha[j]);
    }
    if (!per_line[l].empty()) {
      long sum = 0;
      for (auto [j, slot] : per_line[l]) sum += line_order[l] + ord.alpha[j];
      if (sum < n) {
        long cnt = static_cast<long>(per_line[l].size());
        line_order[l] += (n - sum + cnt - 1) / cnt;
      }
    }
  }
  ord.beta.resize(cfg.joint_count());
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    for (int idx : cfg.joints[j].lines) {
      ord.beta[j].push_back(line_order[idx] + ord.alpha[j]);
    }
  }
  HypothesisReport rep = validate_orders(cfg, ord);
  if (!rep.valid) {
    throw std::logic_error("rounded orders failed exact validation: " +
                           rep.violations.front());
  }
  return ord;
}

FlatVanishingOrders round_to_flat_orders(const FlatJointsConfiguration& cfg,
                                         const WeightAssignment& w, long n) {
  // The line structure is identical under the plain view; reuse the
  // joints-case rounding for alpha and beta.
  JointsConfiguration plain{cfg.field, cfg.dim, cfg.lines, cfg.joints};
  VanishingOrders base = round_to_orders(plain, w, n);

  FlatVanishingOrders ord{base.n, std::move(base.alpha), std::move(base.beta), {}};
  if (w.c.size() != cfg.flats.size()) {
    throw InfeasibleInput("flat weights missing the per-flat values");
  }
  ord.gamma.resize(cfg.flats.size());
  for (std::size_t f = 0; f < cfg.flats.size(); ++f) {
    ord.gamma[f] = std::llround(std::ceil(w.c[f] * static_cast<double>(n)));
  }
  // (c) exactly: gamma_f covers the largest per-joint beta sum on f.
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    long sum = 0;
    for (long v : ord.beta[j]) sum += v;
    long& g = ord.gamma[cfg.joints[j].flat];
    g = std::max(g, sum);
  }
  HypothesisReport rep = validate_orders(cfg, ord);
  if (!rep.valid) {
    throw std::logic_error("rounded flat orders failed exact validation: " +
                           rep.violations.front());
  }
  return ord;
}

}  // namespace jointslab
