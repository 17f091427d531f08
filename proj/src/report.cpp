#include "jointslab/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "jointslab/error.hpp"

namespace jointslab {

bool RunReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void RunReport::add(CheckRecord record) { checks.push_back(std::move(record)); }

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["input_digest"] = report.input_digest;
  doc["pass"] = report.all_pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["reference"] = c.reference;
    cj["detail"] = c.detail;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  doc["checks"] = std::move(checks);
  doc["solver"]["iterations"] = report.solver.iterations;
  doc["solver"]["spread"] = report.solver.spread;
  return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  RunReport report;
  report.input_digest = doc.at("input_digest").get<std::string>();
  for (const auto& cj : doc.at("checks")) {
    CheckRecord c;
    c.name = cj.at("name").get<std::string>();
    c.reference = cj.at("reference").get<std::string>();
    c.detail = cj.at("detail").get<std::string>();
    c.tolerance = cj.at("tolerance").get<double>();
    c.pass = cj.at("pass").get<bool>();
    report.checks.push_back(std::move(c));
  }
  report.solver.iterations = doc.at("solver").at("iterations").get<long>();
  report.solver.spread = doc.at("solver").at("spread").get<double>();
  return report;
}

std::string report_to_text(const RunReport& report) {
  std::size_t width = 4;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  os << "input: " << report.input_digest << "\n";
  for (const auto& c : report.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(static_cast<int>(width))
       << c.name << "  " << c.detail;
    if (c.tolerance > 0.0) os << "  (tol " << c.tolerance << ")";
    os << "\n       " << c.reference << "\n";
  }
  os << "solver: " << report.solver.iterations << " iterations, final spread "
     << report.solver.spread << "\n";
  os << (report.all_pass() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace jointslab
