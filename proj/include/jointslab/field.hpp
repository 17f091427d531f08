#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "jointslab/error.hpp"

namespace jointslab {

// Ambient field descriptor: the rationals or a prime field F_p.
// p fits in a machine word (p < 2^31) so residue products stay in int64.
class Field {
 public:
  Field() = default;  // rationals

  static Field rationals() { return Field{}; }
  static Field prime(std::int64_t p);

  bool is_prime_field() const { return p_ != 0; }
  std::int64_t modulus() const { return p_; }

  std::string describe() const {
    return is_prime_field() ? "prime:" + std::to_string(p_) : "rational";
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::int64_t p_ = 0;  // 0 = rationals
};

bool is_prime(std::int64_t n);

// Exact element of the ambient field. Rational values are kept in lowest
// terms with positive denominator; prime-field residues live in [0, p).
class Scalar {
 public:
  Scalar() = default;  // zero of the rationals

  Scalar(const Field& field, std::int64_t value);
  Scalar(const Field& field, const mpz_class& value);
  Scalar(const Field& field, const mpq_class& value);

  static Scalar zero(const Field& field) { return Scalar(field, 0); }
  static Scalar one(const Field& field) { return Scalar(field, 1); }

  // Parses "a/b", "a", or "a mod p" (the latter must match the field).
  static Scalar parse(const Field& field, const std::string& text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  // Prime-field residue in [0, p); only valid for prime fields.
  std::int64_t residue() const { return res_; }
  // Rational value; only valid for the rational field.
  const mpq_class& rational() const { return rat_; }

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Total order used only for canonical forms and container keys.
  friend bool operator<(const Scalar& a, const Scalar& b);

  Scalar pow(std::int64_t e) const;

  // Nearest double (residues map to their integer value).
  double to_double() const;

  std::string str() const;

 private:
  void check_same_field(const Scalar& o) const {
    if (field_ != o.field_) throw MixedFields();
  }

  Field field_;
  std::int64_t res_ = 0;  // prime-field residue
  mpq_class rat_;         // rational value
};

}  // namespace jointslab
