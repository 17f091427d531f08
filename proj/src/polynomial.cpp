#include "jointslab/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace jointslab {

long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

Polynomial::Polynomial(const Field& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

Polynomial Polynomial::constant(const Field& field, std::size_t nvars, const Scalar& c) {
  Polynomial p(field, nvars);
  p.set_coefficient(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(const Field& field, std::size_t nvars, const Exponent& e,
                                const Scalar& c) {
  Polynomial p(field, nvars);
  p.set_coefficient(e, c);
  return p;
}

Polynomial Polynomial::variable(const Field& field, std::size_t nvars, std::size_t index) {
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(field, nvars, e, Scalar::one(field));
}

long Polynomial::degree() const {
  long deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, total_degree(e));
  return deg;
}

Scalar Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Polynomial::set_coefficient(const Exponent& e, const Scalar& c) {
  if (e.size() != nvars_) throw Error("exponent arity mismatch");
  if (c.is_zero()) {
    terms_.erase(e);
  } else {
    terms_[e] = c;
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out(field_, nvars_);
  Exponent e(nvars_, 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      auto it = out.terms_.find(e);
      if (it == out.terms_.end()) {
        Scalar prod = ca * cb;
        if (!prod.is_zero()) out.terms_.emplace(e, std::move(prod));
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Scalar& c) const {
  Polynomial out(field_, nvars_);
  if (c.is_zero()) return out;
  for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
  return out;
}

Polynomial Polynomial::pow(long e) const {
  if (e < 0) throw Error("negative polynomial power");
  Polynomial acc = constant(field_, nvars_, Scalar::one(field_));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Scalar Polynomial::evaluate(const Point& p) const {
  Scalar acc = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) term *= p.coords[i].pow(e[i]);
    }
    acc += term;
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] > 0) {
        os << "*x" << i + 1;
        if (e[i] > 1) os << "^" << e[i];
      }
    }
  }
  return os.str();
}

Polynomial expand_at(const Polynomial& g, const Point& p, const std::vector<Vec>& dirs) {
  const Field& field = g.field();
  std::size_t d = g.nvars();
  if (!directions_independent(field, dirs)) {
    throw DependentDirections("expansion directions must be independent");
  }
  // Substituted linear form for original variable j: p_j + sum_i dirs[i][j] x_i.
  std::vector<Polynomial> forms;
  forms.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    Polynomial l = Polynomial::constant(field, d, p.coords[j]);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      Exponent e(d, 0);
      e[i] = 1;
      if (!dirs[i][j].is_zero()) {
        l += Polynomial::monomial(field, d, e, dirs[i][j]);
      }
    }
    forms.push_back(std::move(l));
  }
  // Power cache per variable up to the largest exponent used.
  std::vector<long> max_exp(d, 0);
  for (const auto& [e, c] : g.terms()) {
    for (std::size_t j = 0; j < d; ++j) max_exp[j] = std::max(max_exp[j], e[j]);
  }
  std::vector<std::vector<Polynomial>> powers(d);
  for (std::size_t j = 0; j < d; ++j) {
    powers[j].push_back(Polynomial::constant(field, d, Scalar::one(field)));
    for (long k = 1; k <= max_exp[j]; ++k) powers[j].push_back(powers[j].back() * forms[j]);
  }
  Polynomial out(field, d);
  for (const auto& [e, c] : g.terms()) {
    Polynomial term = Polynomial::constant(field, d, c);
    for (std::size_t j = 0; j < d; ++j) {
      if (e[j] != 0) term = term * powers[j][e[j]];
    }
    out += term;
  }
  return out;
}

bool vanishes_to_order(const Polynomial& g, const Point& p, const std::vector<Vec>& dirs,
                       const std::vector<long>& orders) {
  Polynomial local = expand_at(g, p, dirs);
  for (const auto& [e, c] : local.terms()) {
    bool inside = true;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (e[i] >= orders[i]) {
        inside = false;
        break;
      }
    }
    if (inside) return false;  // nonzero coefficient in the order box
  }
  return true;
}

}  // namespace jointslab
