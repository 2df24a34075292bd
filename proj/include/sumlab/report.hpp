#pragma once

// Per-identity verification record and its JSON form.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sumlab/arith.hpp"

namespace sumlab {

struct VerificationReport {
  std::string identity_id;
  std::map<std::string, std::string> parameters;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  /// Convergence records such as values at N and 2N. Warnings are stored
  /// with a "warning:" prefix and value 1.
  std::vector<std::pair<std::string, double>> diagnostics;
  double tolerance = 0.0;
  bool passed = false;
  double wall_time = 0.0;

  /// Sets lhs and rhs and recomputes abs_err, rel_err and passed.
  void settle(cplx left, cplx right, double tol);
  void note(const std::string& label, double value) { diagnostics.emplace_back(label, value); }
  void warn(const std::string& text) { diagnostics.emplace_back("warning:" + text, 1.0); }
  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& value) { parameters[key] = value; }

  /// First diagnostic with this label, or NaN.
  double diagnostic(const std::string& label) const;
  bool has_warning() const;
};

std::string to_json(const VerificationReport& r, int indent = 2);
VerificationReport report_from_json(const std::string& text);
std::string to_json(const std::vector<VerificationReport>& reports, int indent = 2);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

/// One-line summary: identity, residual, pass/fail, time.
std::string summary_line(const VerificationReport& r);

}  // namespace sumlab
