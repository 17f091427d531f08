#include "jointslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jointslab {

namespace {

double mpz_to_double(const mpz_class& z) { return z.get_d(); }

std::string ineq_str(const mpz_class& lhs, const mpz_class& rhs) {
  return lhs.get_str() + (lhs <= rhs ? " <= " : " > ") + rhs.get_str();
}

ChainLink make_link(const std::string& name, double lhs, double rhs, double tau) {
  ChainLink link{name, lhs, rhs, rhs - lhs, true};
  link.holds = link.slack >= -tau * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return link;
}

double balanced_product(const WeightAssignment& w, double tau) {
  std::vector<double> products = w.joint_products();
  if (products.empty()) return 0.0;
  double mx = *std::max_element(products.begin(), products.end());
  double mn = *std::min_element(products.begin(), products.end());
  if (mx - mn > tau * std::max(mx, 1e-300) * 10.0) {
    throw InfeasibleInput("weights are not balanced to a common product");
  }
  return mx;
}

}  // namespace

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::MainJoints:
      return "joints-bound";
    case TheoremId::Multijoints:
      return "multijoints-bound";
    case TheoremId::FlatJoints:
      return "flat-joints-bound";
    case TheoremId::RainbowConjecture:
      return "rainbow-conjecture";
  }
  return "unknown";
}

BoundCertificate certify_main_bound(const mpz_class& joints, const mpz_class& lines,
                                    unsigned dim) {
  BoundCertificate cert;
  cert.id = TheoremId::MainJoints;
  cert.lhs = ipow(mpz_class(dim), dim - 1) * ipow(joints, dim - 1);
  cert.rhs = factorial(dim - 1) * ipow(lines, dim);
  cert.holds = cert.lhs <= cert.rhs;
  double cd = std::pow(mpz_to_double(factorial(dim - 1)), 1.0 / (dim - 1)) / dim;
  double bound = cd * std::pow(mpz_to_double(lines), static_cast<double>(dim) / (dim - 1));
  cert.tightness = bound > 0 ? mpz_to_double(joints) / bound : 0.0;
  std::ostringstream os;
  os << "d^(d-1) J^(d-1) <= (d-1)! L^d at d=" << dim << ", J=" << joints.get_str()
     << ", L=" << lines.get_str() << ": " << ineq_str(cert.lhs, cert.rhs);
  cert.description = os.str();
  return cert;
}

BoundCertificate certify_multijoints_bound(const mpz_class& joints,
                                           const std::vector<mpz_class>& family_sizes) {
  unsigned dim = static_cast<unsigned>(family_sizes.size());
  BoundCertificate cert;
  cert.id = TheoremId::Multijoints;
  cert.lhs = ipow(joints, dim - 1);
  mpz_class prod = 1;
  for (const auto& l : family_sizes) prod *= l;
  cert.rhs = factorial(dim) * prod;
  cert.holds = cert.lhs <= cert.rhs;
  double bound = std::pow(mpz_to_double(cert.rhs), 1.0 / (dim - 1));
  cert.tightness = bound > 0 ? mpz_to_double(joints) / bound : 0.0;
  std::ostringstream os;
  os << "J^(d-1) <= d! L_1...L_d at d=" << dim << ", J=" << joints.get_str() << ": "
     << ineq_str(cert.lhs, cert.rhs);
  cert.description = os.str();
  return cert;
}

BoundCertificate certify_flat_bound(const mpz_class& joints, const mpz_class& lines,
                                    const mpz_class& flats, unsigned dim, unsigned m) {
  BoundCertificate cert;
  cert.id = TheoremId::FlatJoints;
  cert.lhs = ipow(joints, m);
  cert.rhs = binomial(dim, m) * ipow(lines, m) * flats;
  cert.holds = cert.lhs <= cert.rhs;
  double bound = std::pow(mpz_to_double(binomial(dim, m)), 1.0 / m) * mpz_to_double(lines) *
                 std::pow(mpz_to_double(flats), 1.0 / m);
  cert.tightness = bound > 0 ? mpz_to_double(joints) / bound : 0.0;
  std::ostringstream os;
  os << "J^m <= C(d,m) L^m F at d=" << dim << ", m=" << m << ", J=" << joints.get_str()
     << ", L=" << lines.get_str() << ", F=" << flats.get_str() << ": "
     << ineq_str(cert.lhs, cert.rhs);
  cert.description = os.str();
  return cert;
}

BoundCertificate certify_rainbow_conjecture(const mpz_class& joints, const mpz_class& l1,
                                            const mpz_class& l2, const mpz_class& l3) {
  BoundCertificate cert;
  cert.id = TheoremId::RainbowConjecture;
  cert.lhs = joints * joints;
  cert.rhs = 2 * l1 * l2 * l3;
  cert.holds = cert.lhs <= cert.rhs;
  double bound = std::sqrt(mpz_to_double(cert.rhs));
  cert.tightness = bound > 0 ? mpz_to_double(joints) / bound : 0.0;
  std::ostringstream os;
  os << "J^2 <= 2 L_1 L_2 L_3 at J=" << joints.get_str() << ": "
     << ineq_str(cert.lhs, cert.rhs);
  cert.description = os.str();
  return cert;
}

ChainReport verify_amgm_chain(const JointsConfiguration& cfg, const WeightAssignment& w,
                              double tau) {
  ChainReport rep;
  double J = static_cast<double>(cfg.joint_count());
  double L = static_cast<double>(cfg.line_count());
  double d = static_cast<double>(cfg.dim);
  if (cfg.joint_count() == 0) return rep;
  double W = balanced_product(w, tau);
  rep.common_value = W;
  double dfact = mpz_to_double(factorial(cfg.dim));
  rep.links.push_back(make_link("d J W^(1/d) <= L", d * J * std::pow(W, 1.0 / d), L, tau));
  rep.links.push_back(
      make_link("W <= L^d / (d^d J^d)", W, std::pow(L / (d * J), d), tau));
  rep.links.push_back(make_link("1/d! <= J W", 1.0 / dfact, J * W, tau));
  rep.links.push_back(
      make_link("J W <= L^d / (d^d J^(d-1))", J * W, std::pow(L / d, d) / std::pow(J, d - 1.0), tau));
  for (const auto& link : rep.links) rep.all_hold = rep.all_hold && link.holds;
  return rep;
}

ChainReport verify_amgm_chain(const MultijointsConfiguration& cfg, const WeightAssignment& w,
                              double tau) {
  ChainReport rep;
  double J = static_cast<double>(cfg.joint_count());
  double d = static_cast<double>(cfg.dim);
  if (cfg.joint_count() == 0) return rep;
  double W = balanced_product(w, tau);
  rep.common_value = W;
  double prod = 1.0;
  for (std::size_t size : cfg.family_sizes()) prod *= static_cast<double>(size);
  double dfact = mpz_to_double(factorial(cfg.dim));
  rep.links.push_back(make_link("J W^(1/d) <= (L_1...L_d)^(1/d)",
                                J * std::pow(W, 1.0 / d), std::pow(prod, 1.0 / d), tau));
  rep.links.push_back(make_link("W <= L_1...L_d / J^d", W, prod / std::pow(J, d), tau));
  rep.links.push_back(make_link("1/d! <= J W", 1.0 / dfact, J * W, tau));
  rep.links.push_back(
      make_link("J W <= L_1...L_d / J^(d-1)", J * W, prod / std::pow(J, d - 1.0), tau));
  for (const auto& link : rep.links) rep.all_hold = rep.all_hold && link.holds;
  return rep;
}

}  // namespace jointslab
