#pragma once

#include <stdexcept>
#include <string>

namespace jointslab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class MixedFields : public Error {
 public:
  MixedFields() : Error("operands belong to different fields") {}
};

class DependentDirections : public Error {
 public:
  explicit DependentDirections(const std::string& msg = "directions are linearly dependent")
      : Error(msg) {}
};

class DegenerateConstruction : public Error {
 public:
  explicit DegenerateConstruction(const std::string& msg) : Error(msg) {}
};

class InvalidOrders : public Error {
 public:
  explicit InvalidOrders(const std::string& msg) : Error(msg) {}
};

// A named violation of the vanishing-order hypotheses; `clause` is one of
// "a", "b", "c" and `where` identifies the offending line/joint/flat.
class HypothesesViolated : public Error {
 public:
  HypothesesViolated(const std::string& clause, const std::string& where)
      : Error("hypothesis (" + clause + ") violated at " + where),
        clause_(clause),
        where_(where) {}
  const std::string& clause() const { return clause_; }
  const std::string& where() const { return where_; }

 private:
  std::string clause_;
  std::string where_;
};

class EmptyLine : public Error {
 public:
  explicit EmptyLine(const std::string& msg) : Error(msg) {}
};

class NotConnected : public Error {
 public:
  NotConnected() : Error("configuration is not connected") {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& msg, double best_spread)
      : Error(msg), best_spread_(best_spread) {}
  double best_spread() const { return best_spread_; }

 private:
  double best_spread_;
};

class InfeasibleInput : public Error {
 public:
  explicit InfeasibleInput(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace jointslab
