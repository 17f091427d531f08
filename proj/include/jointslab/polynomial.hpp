#pragma once

#include <map>
#include <vector>

#include "jointslab/geometry.hpp"

namespace jointslab {

using Exponent = std::vector<long>;

long total_degree(const Exponent& e);

// Sparse multivariate polynomial over an exact field. Zero coefficients are
// never stored; degree of the zero polynomial is -1.
class Polynomial {
 public:
  Polynomial(const Field& field, std::size_t nvars);

  static Polynomial constant(const Field& field, std::size_t nvars, const Scalar& c);
  static Polynomial monomial(const Field& field, std::size_t nvars, const Exponent& e,
                             const Scalar& c);
  static Polynomial variable(const Field& field, std::size_t nvars, std::size_t index);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  long degree() const;
  std::size_t term_count() const { return terms_.size(); }

  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const Exponent& e) const;
  void set_coefficient(const Exponent& e, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Scalar& c) const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial pow(long e) const;
  Scalar evaluate(const Point& p) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  Field field_;
  std::size_t nvars_;
  std::map<Exponent, Scalar> terms_;
};

// g(p + x_1 e_1 + ... + x_d e_d): the exact local expansion of g at p in the
// given directions. The result's coefficient at x^w is the local coefficient
// of order w.
Polynomial expand_at(const Polynomial& g, const Point& p, const std::vector<Vec>& dirs);

// True iff every local coefficient x^w with w_i < orders[i] for all i
// vanishes in the expansion of g at p along dirs.
bool vanishes_to_order(const Polynomial& g, const Point& p, const std::vector<Vec>& dirs,
                       const std::vector<long>& orders);

}  // namespace jointslab
