#include "jointslab/vanishing.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jointslab {

namespace {

void check_shapes(const std::vector<Joint>& joints, long n, const std::vector<long>& alpha,
                  const std::vector<std::vector<long>>& beta) {
  if (n < 0) throw InvalidOrders("n must be nonnegative");
  if (alpha.size() != joints.size() || beta.size() != joints.size()) {
    throw InvalidOrders("orders do not match the joint count");
  }
  for (std::size_t j = 0; j < joints.size(); ++j) {
    if (beta[j].size() != joints[j].lines.size()) {
      throw InvalidOrders("beta slot count mismatch");
    }
    for (long v : beta[j]) {
      if (v < 0) throw InvalidOrders("beta must be nonnegative");
    }
  }
}

// Shared (a)/(b) validation over a chosen-incidence structure.
void validate_line_hypotheses(const std::vector<std::vector<std::pair<int, int>>>& per_line,
                              const std::vector<long>& alpha,
                              const std::vector<std::vector<long>>& beta, long n,
                              HypothesisReport& rep) {
  for (std::size_t l = 0; l < per_line.size(); ++l) {
    const auto& chosen = per_line[l];
    long sum = 0;
    for (auto [j, slot] : chosen) sum += beta[j][slot];
    if (sum < n) {
      rep.valid = false;
      std::ostringstream os;
      os << "(b) line " << l << ": order sum " << sum << " < n = " << n;
      rep.violations.push_back(os.str());
    }
    for (auto [j, slot] : chosen) {
      for (auto [j2, slot2] : chosen) {
        if (j == j2) continue;
        long lhs = beta[j][slot] - alpha[j];
        long rhs = beta[j2][slot2] - alpha[j2];
        if (lhs != rhs) rep.equality_form = false;
        if (beta[j2][slot2] > 0 && lhs < rhs) {
          rep.valid = false;
          std::ostringstream os;
          os << "(a) line " << l << ": joints " << j << ", " << j2 << ": " << lhs << " < "
             << rhs;
          rep.violations.push_back(os.str());
        }
      }
    }
  }
}

}  // namespace

HypothesisReport validate_orders(const JointsConfiguration& cfg, const VanishingOrders& ord) {
  check_shapes(cfg.joints, ord.n, ord.alpha, ord.beta);
  HypothesisReport rep;
  validate_line_hypotheses(cfg.chosen_joints_per_line(), ord.alpha, ord.beta, ord.n, rep);
  return rep;
}

HypothesisReport validate_orders(const FlatJointsConfiguration& cfg,
                                 const FlatVanishingOrders& ord) {
  check_shapes(cfg.joints, ord.n, ord.alpha, ord.beta);
  if (ord.gamma.size() != cfg.flats.size()) {
    throw InvalidOrders("gamma does not match the flat count");
  }
  for (long g : ord.gamma) {
    if (g < 0) throw InvalidOrders("gamma must be nonnegative");
  }
  HypothesisReport rep;
  validate_line_hypotheses(cfg.chosen_joints_per_line(), ord.alpha, ord.beta, ord.n, rep);
  for (std::size_t j = 0; j < cfg.joints.size(); ++j) {
    long sum = 0;
    for (long v : ord.beta[j]) sum += v;
    if (sum > ord.gamma[cfg.joints[j].flat]) {
      rep.valid = false;
      std::ostringstream os;
      os << "(c) joint " << j << ", flat " << cfg.joints[j].flat << ": beta sum " << sum
         << " > gamma = " << ord.gamma[cfg.joints[j].flat];
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

namespace {

template <typename Cfg, typename Ord>
void require_valid_impl(const Cfg& cfg, const Ord& ord) {
  HypothesisReport rep = validate_orders(cfg, ord);
  if (!rep.valid) {
    const std::string& first = rep.violations.front();
    std::string clause = first.substr(1, 1);  // "(a) ..." -> "a"
    throw HypothesesViolated(clause, first.substr(4));
  }
}

}  // namespace

void require_valid_orders(const JointsConfiguration& cfg, const VanishingOrders& ord) {
  require_valid_impl(cfg, ord);
}

void require_valid_orders(const FlatJointsConfiguration& cfg, const FlatVanishingOrders& ord) {
  require_valid_impl(cfg, ord);
}

std::vector<Exponent> monomial_basis(std::size_t dim, long n) {
  std::vector<Exponent> out;
  Exponent cur(dim, 0);
  // graded-lex: by total degree, then lexicographic with x1 largest
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long remaining) {
    if (pos + 1 == dim) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (long e = remaining; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  for (long deg = 0; deg < n; ++deg) rec(0, deg);
  return out;
}

namespace {

// Expansions of every basis monomial y^mu under y_j = p_j + sum_i dirs[i][j] x_i,
// built incrementally: each monomial is a parent monomial times one linear form.
std::vector<Polynomial> expand_basis_monomials(const Field& field,
                                               const std::vector<Exponent>& monomials,
                                               const Point& p,
                                               const std::vector<Vec>& dirs) {
  std::size_t d = p.dim();
  std::vector<Polynomial> forms;
  for (std::size_t j = 0; j < d; ++j) {
    Polynomial l = Polynomial::constant(field, d, p.coords[j]);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (!dirs[i][j].is_zero()) {
        Exponent e(d, 0);
        e[i] = 1;
        l += Polynomial::monomial(field, d, e, dirs[i][j]);
      }
    }
    forms.push_back(std::move(l));
  }
  std::map<Exponent, std::size_t> position;
  std::vector<Polynomial> out;
  out.reserve(monomials.size());
  for (std::size_t idx = 0; idx < monomials.size(); ++idx) {
    const Exponent& mu = monomials[idx];
    if (total_degree(mu) == 0) {
      out.push_back(Polynomial::constant(field, d, Scalar::one(field)));
    } else {
      std::size_t j = 0;
      while (mu[j] == 0) ++j;
      Exponent parent = mu;
      parent[j]--;
      out.push_back(out[position.at(parent)] * forms[j]);
    }
    position.emplace(mu, idx);
  }
  return out;
}

}  // namespace

ConstraintSystem assemble_joint_constraints(const JointsConfiguration& cfg,
                                            const VanishingOrders& ord) {
  require_valid_orders(cfg, ord);
  std::vector<Exponent> monomials = monomial_basis(cfg.dim, ord.n);

  // Row layout: per joint, row-major over the beta box.
  std::vector<std::size_t> block_start(cfg.joint_count() + 1, 0);
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    std::size_t count = 1;
    for (long b : ord.beta[j]) count *= static_cast<std::size_t>(b);
    block_start[j + 1] = block_start[j] + count;
  }

  ConstraintSystem cs{ord.n, cfg.dim, monomials,
                      Matrix(cfg.field, block_start.back(), monomials.size()),
                      {}};
  cs.tags.resize(block_start.back());
  for (std::size_t j = 0; j < cfg.joint_count(); ++j) {
    if (block_start[j + 1] == block_start[j]) continue;  // some beta is zero
    const std::vector<long>& beta = ord.beta[j];
    // enumerate the box row-major for the tags
    Exponent w(cfg.dim, 0);
    for (std::size_t r = block_start[j]; r < block_start[j + 1]; ++r) {
      cs.tags[r] = ConstraintRowTag{ConstraintRowTag::Source::Joint, static_cast<int>(j), w};
      for (std::size_t i = cfg.dim; i-- > 0;) {
        if (++w[i] < beta[i]) break;
        w[i] = 0;
      }
    }
    std::vector<Polynomial> expansions = expand_basis_monomials(
        cfg.field, monomials, cfg.joints[j].point, cfg.joint_directions(j));
    for (std::size_t col = 0; col < monomials.size(); ++col) {
      for (const auto& [e, coeff] : expansions[col].terms()) {
        bool inside = true;
        std::size_t offset = 0;
        for (std::size_t i = 0; i < cfg.dim; ++i) {
          if (e[i] >= beta[i]) {
            inside = false;
            break;
          }
          offset = offset * static_cast<std::size_t>(beta[i]) +
                   static_cast<std::size_t>(e[i]);
        }
        if (inside) cs.rows.at(block_start[j] + offset, col) = coeff;
      }
    }
  }
  return cs;
}

ConstraintSystem assemble_flat_constraints(const FlatJointsConfiguration& cfg,
                                           const FlatVanishingOrders& ord) {
  require_valid_orders(cfg, ord);
  std::vector<Exponent> monomials = monomial_basis(cfg.dim, ord.n);
  std::size_t m = cfg.m;

  ConstraintSystem cs{ord.n, cfg.dim, monomials, Matrix(), {}};
  std::vector<std::vector<Vec>> rows_data;
  std::vector<Vec> all_rows;
  for (std::size_t f = 0; f < cfg.flats.size(); ++f) {
    // Local row per monomial with transverse exponent sum below gamma_f.
    std::map<Exponent, std::size_t> row_of;
    for (const Exponent& w : monomials) {
      long transverse = 0;
      for (std::size_t i = 0; i < m; ++i) transverse += w[i];
      if (transverse < ord.gamma[f]) {
        row_of.emplace(w, all_rows.size());
        all_rows.emplace_back(monomials.size(), Scalar::zero(cfg.field));
        cs.tags.push_back(
            ConstraintRowTag{ConstraintRowTag::Source::Flat, static_cast<int>(f), w});
      }
    }
    if (row_of.empty()) continue;
    std::vector<Polynomial> expansions = expand_basis_monomials(
        cfg.field, monomials, cfg.flats[f].base(), flat_frame(cfg.field, cfg.flats[f]));
    for (std::size_t col = 0; col < monomials.size(); ++col) {
      for (const auto& [e, coeff] : expansions[col].terms()) {
        auto it = row_of.find(e);
        if (it != row_of.end()) all_rows[it->second][col] = coeff;
      }
    }
  }
  cs.rows = Matrix::from_rows(cfg.field, all_rows);
  if (all_rows.empty()) cs.rows = Matrix(cfg.field, 0, monomials.size());
  return cs;
}

DegreeCertificate certify_degree_bound(const ConstraintSystem& cs) {
  std::vector<Vec> basis = kernel_basis(cs.rows);
  if (basis.empty()) return DegreeCertificate{true, std::nullopt};
  Polynomial witness(cs.rows.field(), cs.dim);
  for (std::size_t i = 0; i < cs.monomials.size(); ++i) {
    witness.set_coefficient(cs.monomials[i], basis.front()[i]);
  }
  return DegreeCertificate{false, std::move(witness)};
}

CountingReport check_counting_inequality(const JointsConfiguration& cfg,
                                         const VanishingOrders& ord) {
  require_valid_orders(cfg, ord);
  CountingReport rep;
  rep.lhs = 0;
  for (const auto& beta : ord.beta) {
    mpz_class prod = 1;
    for (long b : beta) prod *= b;
    rep.lhs += prod;
  }
  rep.rhs = binomial(static_cast<unsigned long>(ord.n + cfg.dim - 1),
                     static_cast<unsigned long>(cfg.dim));
  rep.holds = rep.lhs >= rep.rhs;
  if (!rep.holds) {
    throw std::logic_error("counting inequality failed on validated orders: " +
                           rep.lhs.get_str() + " < " + rep.rhs.get_str());
  }
  return rep;
}

CountingReport check_counting_inequality(const FlatJointsConfiguration& cfg,
                                         const FlatVanishingOrders& ord) {
  require_valid_orders(cfg, ord);
  CountingReport rep;
  mpz_class gamma_sum = 0;
  for (long g : ord.gamma) {
    gamma_sum += binomial(static_cast<unsigned long>(g + cfg.m - 1),
                          static_cast<unsigned long>(cfg.m));
  }
  rep.lhs = binomial(static_cast<unsigned long>(ord.n + cfg.dim - cfg.m - 1),
                     static_cast<unsigned long>(cfg.dim - cfg.m)) *
            gamma_sum;
  rep.rhs = binomial(static_cast<unsigned long>(ord.n + cfg.dim - 1),
                     static_cast<unsigned long>(cfg.dim));
  rep.holds = rep.lhs >= rep.rhs;
  if (!rep.holds) {
    throw std::logic_error("flat counting inequality failed on validated orders: " +
                           rep.lhs.get_str() + " < " + rep.rhs.get_str());
  }
  return rep;
}

VanishingOrders extend_orders_for_augmentation(const AugmentedConfiguration& aug,
                                               const FlatVanishingOrders& ord) {
  VanishingOrders out{ord.n, ord.alpha, {}};
  out.beta.reserve(aug.config.joint_count());
  for (std::size_t j = 0; j < aug.config.joint_count(); ++j) {
    std::vector<long> beta = ord.beta[j];
    beta.resize(aug.config.joints[j].lines.size(), ord.n);
    out.beta.push_back(std::move(beta));
  }
  return out;
}

}  // namespace jointslab
