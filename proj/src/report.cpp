#include "sumlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace sumlab {

using nlohmann::json;

void VerificationReport::settle(cplx left, cplx right, double tol) {
  lhs = left;
  rhs = right;
  tolerance = tol;
  abs_err = std::abs(lhs - rhs);
  rel_err = abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  passed = abs_err <= tolerance || rel_err <= tolerance;
}

void VerificationReport::set(const std::string& key, double value) { parameters[key] = format_number(value); }

double VerificationReport::diagnostic(const std::string& label) const {
  for (const auto& [k, v] : diagnostics)
    if (k == label) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

bool VerificationReport::has_warning() const {
  for (const auto& d : diagnostics)
    if (d.first.rfind("warning:", 0) == 0) return true;
  return false;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no NaN or infinity; encode them as strings
json encode(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double decode(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw DomainError("report: malformed number '" + s + "'");
}

json to_object(const VerificationReport& r) {
  json diag = json::array();
  for (const auto& [k, v] : r.diagnostics) diag.push_back(json::array({k, encode(v)}));
  return json{{"identity_id", r.identity_id},
              {"parameters", r.parameters},
              {"lhs", json::array({encode(r.lhs.real()), encode(r.lhs.imag())})},
              {"rhs", json::array({encode(r.rhs.real()), encode(r.rhs.imag())})},
              {"abs_err", encode(r.abs_err)},
              {"rel_err", encode(r.rel_err)},
              {"diagnostics", diag},
              {"tolerance", encode(r.tolerance)},
              {"passed", r.passed},
              {"wall_time", encode(r.wall_time)}};
}

}  // namespace

std::string to_json(const VerificationReport& r, int indent) { return to_object(r).dump(indent); }

std::string to_json(const std::vector<VerificationReport>& reports, int indent) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_object(r));
  return arr.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("report: invalid JSON: ") + e.what());
  }
  VerificationReport r;
  try {
    r.identity_id = j.at("identity_id").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    r.lhs = cplx(decode(j.at("lhs").at(0)), decode(j.at("lhs").at(1)));
    r.rhs = cplx(decode(j.at("rhs").at(0)), decode(j.at("rhs").at(1)));
    r.abs_err = decode(j.at("abs_err"));
    r.rel_err = decode(j.at("rel_err"));
    for (const auto& d : j.at("diagnostics")) r.diagnostics.emplace_back(d.at(0).get<std::string>(), decode(d.at(1)));
    r.tolerance = decode(j.at("tolerance"));
    r.passed = j.at("passed").get<bool>();
    r.wall_time = decode(j.at("wall_time"));
  } catch (const json::exception& e) {
    throw DomainError(std::string("report: missing or malformed field: ") + e.what());
  }
  return r;
}

std::string summary_line(const VerificationReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s abs_err=%.3e rel_err=%.3e tol=%.1e %s %.2fs", r.identity_id.c_str(),
                r.abs_err, r.rel_err, r.tolerance, r.passed ? "PASS" : "FAIL", r.wall_time);
  return buf;
}

}  // namespace sumlab
