#include "jointslab/field.hpp"

#include <cmath>
#include <sstream>

namespace jointslab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t q = 3; q * q <= n; q += 2) {
    if (n % q == 0) return false;
  }
  return true;
}

Field Field::prime(std::int64_t p) {
  if (p <= 0 || p >= (std::int64_t{1} << 31)) {
    throw Error("field modulus out of range: " + std::to_string(p));
  }
  if (!is_prime(p)) {
    throw Error("field modulus is not prime: " + std::to_string(p));
  }
  Field f;
  f.p_ = p;
  return f;
}

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  // Extended Euclid; a in [1, p).
  std::int64_t old_r = a, r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return mod_reduce(old_s, p);
}

}  // namespace

Scalar::Scalar(const Field& field, std::int64_t value) : field_(field) {
  if (field_.is_prime_field()) {
    res_ = mod_reduce(value, field_.modulus());
  } else {
    rat_ = value;
  }
}

Scalar::Scalar(const Field& field, const mpz_class& value) : field_(field) {
  if (field_.is_prime_field()) {
    mpz_class m = value % field_.modulus();
    res_ = mod_reduce(m.get_si(), field_.modulus());
  } else {
    rat_ = value;
  }
}

Scalar::Scalar(const Field& field, const mpq_class& value) : field_(field) {
  if (field_.is_prime_field()) {
    mpq_class v = value;
    v.canonicalize();
    Scalar num(field, v.get_num());
    Scalar den(field, v.get_den());
    *this = num / den;
  } else {
    rat_ = value;
    rat_.canonicalize();
  }
}

Scalar Scalar::parse(const Field& field, const std::string& text) {
  auto mod_pos = text.find(" mod ");
  std::string body = text;
  if (mod_pos != std::string::npos) {
    if (!field.is_prime_field()) {
      throw ParseError("residue literal \"" + text + "\" in rational field");
    }
    std::int64_t p = std::stoll(text.substr(mod_pos + 5));
    if (p != field.modulus()) {
      throw ParseError("residue literal \"" + text + "\" does not match field modulus " +
                       std::to_string(field.modulus()));
    }
    body = text.substr(0, mod_pos);
  }
  // Numerator and denominator are parsed separately: mpq_set_str does not
  // reject a sign after '/' and can leave a malformed value behind.
  try {
    auto slash = body.find('/');
    if (slash == std::string::npos) {
      return Scalar(field, mpq_class(mpz_class(body)));
    }
    mpz_class num(body.substr(0, slash));
    mpz_class den(body.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(field, q);
  } catch (const std::invalid_argument&) {
    throw ParseError("cannot parse scalar \"" + text + "\"");
  }
}

bool Scalar::is_zero() const {
  return field_.is_prime_field() ? res_ == 0 : rat_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_prime_field() ? res_ == 1 : rat_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (field_.is_prime_field()) {
    r.res_ = res_ == 0 ? 0 : field_.modulus() - res_;
  } else {
    r.rat_ = -rat_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar r(*this);
  if (field_.is_prime_field()) {
    r.res_ = mod_inverse(res_, field_.modulus());
  } else {
    r.rat_ = 1 / rat_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ = mod_reduce(res_ + o.res_, field_.modulus());
  } else {
    rat_ += o.rat_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ = mod_reduce(res_ - o.res_, field_.modulus());
  } else {
    rat_ -= o.rat_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_prime_field()) {
    res_ = mod_reduce(res_ * o.res_, field_.modulus());
  } else {
    rat_ *= o.rat_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) throw MixedFields();
  return a.field_.is_prime_field() ? a.res_ == b.res_ : a.rat_ == b.rat_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) throw MixedFields();
  return a.field_.is_prime_field() ? a.res_ < b.res_ : a.rat_ < b.rat_;
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = Scalar::one(field_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

double Scalar::to_double() const {
  return field_.is_prime_field() ? static_cast<double>(res_) : rat_.get_d();
}

std::string Scalar::str() const {
  if (field_.is_prime_field()) {
    return std::to_string(res_) + " mod " + std::to_string(field_.modulus());
  }
  return rat_.get_str();
}

}  // namespace jointslab
