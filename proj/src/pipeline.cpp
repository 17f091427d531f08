#include "jointslab/pipeline.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "jointslab/bounds.hpp"

namespace jointslab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

long default_order_target(const std::vector<std::vector<std::pair<int, int>>>& per_line,
                          std::size_t dim, std::size_t column_budget) {
  std::size_t max_joints = 1;
  for (const auto& chosen : per_line) max_joints = std::max(max_joints, chosen.size());
  long n = 10 * static_cast<long>(max_joints);
  while (n > 1 && binomial(static_cast<unsigned long>(n + dim - 1),
                           static_cast<unsigned long>(dim)) > column_budget) {
    --n;
  }
  return n;
}

struct StageRunner {
  RunReport& report;
  std::string prefix;

  // Runs a stage, converting exceptions into failed checks.
  template <typename Fn>
  bool stage(const std::string& name, const std::string& reference, Fn&& fn) {
    try {
      fn();
      return true;
    } catch (const Error& e) {
      report.add({prefix + name, reference, std::string("error: ") + e.what(), 0.0, false});
      return false;
    } catch (const std::logic_error& e) {
      report.add({prefix + name, reference, std::string("error: ") + e.what(), 0.0, false});
      return false;
    }
  }
};

constexpr const char* kBalanceRef =
    "connected configurations admit feasible weights with a common per-joint product";
constexpr const char* kSumRef = "sum_p prod_(l at p) b_{p,l} >= 1/d! for feasible weights";
constexpr const char* kRoundRef =
    "alpha = ceil(a n), beta = ceil(t n) + alpha satisfy (a) with equality and (b) exactly";
constexpr const char* kKernelRef =
    "no nonzero polynomial of degree < n vanishes to the given orders";
constexpr const char* kCountRef = "sum_p prod_(l at p) beta_{p,l} >= C(n+d-1, d)";
constexpr const char* kFlatCountRef =
    "C(n+d-m-1, d-m) * sum_f C(gamma_f+m-1, m) >= C(n+d-1, d)";
constexpr const char* kChainRef = "links of the product-balancing bound chain";
constexpr const char* kSubsetRef =
    "nonempty J', L' with |J'|/|L'| >= |J|/|L| and common per-joint sum s = |L'|/|J'|";
constexpr const char* kFlatSumRef = "sum_f c_f^m >= 1/C(d,m) for feasible flat weights";

void record_chain(RunReport& report, const std::string& prefix, const ChainReport& chain,
                  double tau) {
  for (const auto& link : chain.links) {
    report.add({prefix + "chain: " + link.name, kChainRef,
                fmt(link.lhs) + " <= " + fmt(link.rhs) + ", slack " + fmt(link.slack), tau,
                link.holds});
  }
}

// Weight/order/kernel stages shared by the joints and multijoints kinds.
// Returns the balanced weights when balancing converged.
void run_joint_component(const JointsConfiguration& comp, const std::string& prefix,
                         const VerifyOptions& opts, long n, RunReport& report,
                         const MultijointsConfiguration* multi_view) {
  StageRunner runner{report, prefix};
  BalanceResult balance;
  bool solved = runner.stage("balance", kBalanceRef, [&] {
    balance = balance_products(comp, opts.solver);
    report.solver.iterations += balance.iterations;
    report.solver.spread = std::max(report.solver.spread, balance.spread);
    if (!balance.converged) {
      throw NoConvergence("spread " + fmt(balance.spread) + " above target", balance.spread);
    }
    report.add({prefix + "balance", kBalanceRef,
                "spread " + fmt(balance.spread) + " after " +
                    std::to_string(balance.iterations) + " iterations",
                opts.solver.tau_spread, true});
  });
  if (!solved) return;

  const WeightAssignment& w = balance.weights;
  report.add({prefix + "feasibility",
              "b >= 0, per-line sums 1, b - a constant along every line",
              weights_feasible(comp, w, opts.solver.tau_feasibility) ? "feasible" : "violated",
              opts.solver.tau_feasibility,
              weights_feasible(comp, w, opts.solver.tau_feasibility)});

  double product_sum = 0.0;
  for (double p : w.joint_products()) product_sum += p;
  double dfact = factorial(comp.dim).get_d();
  report.add({prefix + "product sum", kSumRef,
              fmt(product_sum) + " >= " + fmt(1.0 / dfact) + " - tau",
              opts.solver.tau_spread,
              product_sum >= 1.0 / dfact - opts.solver.tau_spread});

  ChainReport chain = multi_view ? verify_amgm_chain(*multi_view, w, opts.solver.tau_spread)
                                 : verify_amgm_chain(comp, w, opts.solver.tau_spread);
  record_chain(report, prefix, chain, opts.solver.tau_spread);

  if (opts.mode == VerifyOptions::Mode::Weights) return;

  VanishingOrders orders;
  bool rounded = runner.stage("rounding", kRoundRef, [&] {
    orders = round_to_orders(comp, w, n);
    HypothesisReport rep = validate_orders(comp, orders);
    report.add({prefix + "rounding", kRoundRef,
                "orders at n = " + std::to_string(n) + " valid, equality form " +
                    (rep.equality_form ? "holds" : "does not hold"),
                0.0, rep.valid});
  });
  if (!rounded || opts.mode == VerifyOptions::Mode::Orders) return;

  runner.stage("degree bound", kKernelRef, [&] {
    ConstraintSystem cs = assemble_joint_constraints(comp, orders);
    DegreeCertificate cert = certify_degree_bound(cs);
    report.add({prefix + "degree bound", kKernelRef,
                std::to_string(cs.rows.rows()) + " constraints on " +
                    std::to_string(cs.rows.cols()) + " coefficients: kernel " +
                    (cert.kernel_trivial ? "trivial" : "NONTRIVIAL"),
                0.0, cert.kernel_trivial});
  });
  runner.stage("counting", kCountRef, [&] {
    CountingReport count = check_counting_inequality(comp, orders);
    report.add({prefix + "counting", kCountRef,
                count.lhs.get_str() + " >= " + count.rhs.get_str(), 0.0, count.holds});
  });
}

// Components are independent; verify them concurrently and merge the
// report fragments in component order.
void run_components_parallel(const std::vector<JointsConfiguration>& components,
                             const std::vector<const MultijointsConfiguration*>& multi_views,
                             const VerifyOptions& opts, long n, RunReport& report) {
  std::vector<std::future<RunReport>> futures;
  futures.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      RunReport fragment;
      std::string prefix = "component " + std::to_string(i) + ": ";
      run_joint_component(components[i], prefix, opts, n, fragment, multi_views[i]);
      return fragment;
    }));
  }
  for (auto& future : futures) {
    RunReport fragment = future.get();
    for (auto& check : fragment.checks) report.add(std::move(check));
    report.solver.iterations += fragment.solver.iterations;
    report.solver.spread = std::max(report.solver.spread, fragment.solver.spread);
  }
}

void verify_joints(const JointsConfiguration& cfg, const VerifyOptions& opts,
                   RunReport& report) {
  std::vector<JointsConfiguration> components = connected_components(cfg);
  long n = opts.n >= 0 ? opts.n
                       : default_order_target(cfg.chosen_joints_per_line(), cfg.dim,
                                              opts.column_budget);
  run_components_parallel(components,
                          std::vector<const MultijointsConfiguration*>(components.size(),
                                                                       nullptr),
                          opts, n, report);
  if (opts.mode == VerifyOptions::Mode::All) {
    BoundCertificate cert = certify_main_bound(mpz_class(cfg.joint_count()),
                                               mpz_class(cfg.line_count()),
                                               static_cast<unsigned>(cfg.dim));
    report.add({"bound certificate", cert.description,
                "tightness " + fmt(cert.tightness), 0.0, cert.holds});
  }
}

void verify_multijoints(const MultijointsConfiguration& cfg, const VerifyOptions& opts,
                        RunReport& report) {
  std::vector<MultijointsConfiguration> components = connected_components(cfg);
  long n = opts.n >= 0
               ? opts.n
               : default_order_target(cfg.as_joints_configuration().chosen_joints_per_line(),
                                      cfg.dim, opts.column_budget);
  std::vector<JointsConfiguration> plain;
  std::vector<const MultijointsConfiguration*> views;
  plain.reserve(components.size());
  for (const auto& comp : components) {
    plain.push_back(comp.as_joints_configuration());
    views.push_back(&comp);
  }
  run_components_parallel(plain, views, opts, n, report);
  if (opts.mode == VerifyOptions::Mode::All) {
    std::vector<mpz_class> sizes;
    for (std::size_t s : cfg.family_sizes()) sizes.emplace_back(s);
    BoundCertificate cert = certify_multijoints_bound(mpz_class(cfg.joint_count()), sizes);
    report.add({"bound certificate", cert.description, "tightness " + fmt(cert.tightness),
                0.0, cert.holds});
    if (cfg.dim == 3) {
      BoundCertificate conj = certify_rainbow_conjecture(mpz_class(cfg.joint_count()),
                                                         sizes[0], sizes[1], sizes[2]);
      report.add({"conjectured sharp bound", conj.description,
                  "tightness " + fmt(conj.tightness), 0.0, conj.holds});
    }
  }
}

void verify_flatjoints(const FlatJointsConfiguration& cfg, const VerifyOptions& opts,
                       RunReport& report) {
  if (cfg.joint_count() == 0) {
    // nothing to balance or certify; only the aggregate bound remains
    if (opts.mode == VerifyOptions::Mode::All) {
      BoundCertificate cert = certify_flat_bound(
          0, mpz_class(cfg.line_count()), mpz_class(cfg.flats.size()),
          static_cast<unsigned>(cfg.dim), static_cast<unsigned>(cfg.m));
      report.add({"bound certificate", cert.description, "tightness " + fmt(cert.tightness),
                  0.0, cert.holds});
    }
    return;
  }
  StageRunner runner{report, ""};
  SubsetBalanceResult subset;
  bool solved = runner.stage("subset balance", kSubsetRef, [&] {
    subset = balance_sums_with_subsets(cfg, opts.solver);
    report.solver.iterations += subset.iterations;
    report.solver.spread = std::max(report.solver.spread, subset.spread);
    report.add({"subset balance", kSubsetRef,
                "|J'| = " + std::to_string(subset.sub.joint_count()) +
                    ", |L'| = " + std::to_string(subset.sub.line_count()) + ", s = " +
                    fmt(subset.s) + ", spread " + fmt(subset.spread),
                opts.solver.tau_spread, subset.converged});
  });
  if (!solved) return;

  double j_prime = static_cast<double>(subset.sub.joint_count());
  double l_prime = static_cast<double>(subset.sub.line_count());
  double ratio = j_prime / l_prime;
  double original_ratio =
      static_cast<double>(cfg.joint_count()) / static_cast<double>(cfg.line_count());
  report.add({"subset ratio", kSubsetRef,
              fmt(ratio) + " >= " + fmt(original_ratio), 1e-12,
              ratio >= original_ratio - 1e-12});
  report.add({"sum identity", kSubsetRef,
              "s |J'| = " + fmt(subset.s * j_prime) + " vs |L'| = " + fmt(l_prime), 1e-6,
              std::abs(subset.s * j_prime - l_prime) <= 1e-6});

  double c_sum = 0.0;
  for (double c : subset.weights.c) c_sum += std::pow(c, static_cast<double>(cfg.m));
  double lower = 1.0 / binomial(static_cast<unsigned long>(cfg.dim),
                                static_cast<unsigned long>(cfg.m))
                           .get_d();
  report.add({"flat weight sum", kFlatSumRef, fmt(c_sum) + " >= " + fmt(lower) + " - tau",
              opts.solver.tau_spread, c_sum >= lower - opts.solver.tau_spread});

  if (opts.mode == VerifyOptions::Mode::Weights) return;

  long n = opts.n;
  if (n < 0) {
    n = default_order_target(subset.sub.chosen_joints_per_line(), cfg.dim,
                             opts.column_budget);
  }
  FlatVanishingOrders orders;
  bool rounded = runner.stage("rounding", kRoundRef, [&] {
    orders = round_to_flat_orders(subset.sub, subset.weights, n);
    HypothesisReport rep = validate_orders(subset.sub, orders);
    report.add({"rounding", kRoundRef,
                "orders at n = " + std::to_string(n) + " valid: (a), (b), (c) hold exactly",
                0.0, rep.valid});
  });
  if (!rounded || opts.mode == VerifyOptions::Mode::Orders) return;

  runner.stage("flat degree bound", kKernelRef, [&] {
    ConstraintSystem cs = assemble_flat_constraints(subset.sub, orders);
    DegreeCertificate cert = certify_degree_bound(cs);
    report.add({"flat degree bound", kKernelRef,
                std::to_string(cs.rows.rows()) + " constraints on " +
                    std::to_string(cs.rows.cols()) + " coefficients: kernel " +
                    (cert.kernel_trivial ? "trivial" : "NONTRIVIAL"),
                0.0, cert.kernel_trivial});
  });
  runner.stage("flat counting", kFlatCountRef, [&] {
    CountingReport count = check_counting_inequality(subset.sub, orders);
    report.add({"flat counting", kFlatCountRef,
                count.lhs.get_str() + " >= " + count.rhs.get_str(), 0.0, count.holds});
  });
  runner.stage("augmented degree bound", kKernelRef, [&] {
    AugmentedConfiguration aug = augment_with_flat_lines(subset.sub);
    aug.config.validate();
    VanishingOrders extended = extend_orders_for_augmentation(aug, orders);
    require_valid_orders(aug.config, extended);
    ConstraintSystem cs = assemble_joint_constraints(aug.config, extended);
    DegreeCertificate cert = certify_degree_bound(cs);
    report.add({"augmented degree bound", kKernelRef,
                "augmented with " + std::to_string(aug.new_line_joint.size()) +
                    " lines: " + std::to_string(cs.rows.rows()) + " constraints on " +
                    std::to_string(cs.rows.cols()) + " coefficients: kernel " +
                    (cert.kernel_trivial ? "trivial" : "NONTRIVIAL"),
                0.0, cert.kernel_trivial});
  });

  if (opts.mode == VerifyOptions::Mode::All) {
    BoundCertificate cert = certify_flat_bound(
        mpz_class(cfg.joint_count()), mpz_class(cfg.line_count()), mpz_class(cfg.flats.size()),
        static_cast<unsigned>(cfg.dim), static_cast<unsigned>(cfg.m));
    report.add({"bound certificate", cert.description, "tightness " + fmt(cert.tightness),
                0.0, cert.holds});
  }
}

}  // namespace

VerifyOptions::Mode parse_mode(const std::string& text) {
  if (text == "weights") return VerifyOptions::Mode::Weights;
  if (text == "orders") return VerifyOptions::Mode::Orders;
  if (text == "polymethod") return VerifyOptions::Mode::Polymethod;
  if (text == "all") return VerifyOptions::Mode::All;
  throw Error("unknown mode \"" + text + "\"");
}

RunReport verify_configuration(const AnyConfiguration& cfg, const VerifyOptions& opts) {
  RunReport report;
  report.input_digest = content_digest(serialize_config(cfg));
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, JointsConfiguration>) {
          verify_joints(c, opts, report);
        } else if constexpr (std::is_same_v<T, MultijointsConfiguration>) {
          verify_multijoints(c, opts, report);
        } else {
          verify_flatjoints(c, opts, report);
        }
      },
      cfg);
  return report;
}

}  // namespace jointslab
