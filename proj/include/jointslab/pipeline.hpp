#pragma once

#include "jointslab/io.hpp"
#include "jointslab/report.hpp"
#include "jointslab/weights.hpp"

namespace jointslab {

struct VerifyOptions {
  enum class Mode { Weights, Orders, Polymethod, All };

  long n = -1;  // -1: 10 * max chosen joints per line, capped at a column budget
  Mode mode = Mode::All;
  SolverOptions solver;
  std::size_t column_budget = 400;  // cap on C(n+d-1, d): n <= 12 at d = 3
};

VerifyOptions::Mode parse_mode(const std::string& text);

// The full verification chain: decompose into connected components; per
// component balance weights, check the product chain, round to integer
// orders, certify kernel triviality and the counting inequality; then check
// the aggregate bound certificate. Failures are recorded per check, never
// thrown, so a report is always produced.
RunReport verify_configuration(const AnyConfiguration& cfg, const VerifyOptions& opts = {});

}  // namespace jointslab
