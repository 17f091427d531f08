#pragma once

#include <string>
#include <vector>

namespace jointslab {

// One verified statement: `reference` states the inequality or property the
// check instantiates, `detail` carries the exact values, and failures name
// the violated clause in `detail`.
struct CheckRecord {
  std::string name;
  std::string reference;
  std::string detail;
  double tolerance = 0.0;  // 0 = exact integer check
  bool pass = false;
};

struct SolverTelemetry {
  long iterations = 0;
  double spread = 0.0;
};

struct RunReport {
  std::string input_digest;
  std::vector<CheckRecord> checks;
  SolverTelemetry solver;

  bool all_pass() const;
  void add(CheckRecord record);
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
std::string report_to_text(const RunReport& report);

}  // namespace jointslab
