#pragma once

// Identity registry, run configuration, dispatch and parameter sweeps.

#include <optional>
#include <string>
#include <vector>

#include "sumlab/report.hpp"
#include "sumlab/transform.hpp"

namespace sumlab {

struct IdentityInfo {
  std::string id;
  std::string anchor;      // what the identity is, in words
  std::string parameters;  // accepted parameters and their defaults
};

/// Registered identities in a fixed order.
const std::vector<IdentityInfo>& identity_registry();
bool is_registered(const std::string& id);

struct SweepSpec {
  std::string parameter;  // N, T or h
  double factor = 2.0;
  int steps = 4;
};

/// Unset optionals fall back to per-identity defaults.
struct RunConfig {
  std::string identity_id;
  std::string function_label;  // empty selects the identity default
  FunctionParams function_params;
  /// Numeric parameters: x, z, A, a_re, a_im, s_re, s_im, v_re, v_im,
  /// m_cutoff, m_terms, gamma_shift.
  std::map<std::string, double> params;
  std::string sequence;  // registry name, or "b=1,2" for b supported on a list
  std::string set_S;     // comma-separated members for berndt
  std::optional<double> abscissa, height, step;
  std::optional<std::uint64_t> cutoff;
  std::optional<Smoothing> smoothing;
  std::optional<double> delta;
  std::optional<double> tolerance;
  std::string output_path;
  std::optional<SweepSpec> sweep;

  void validate() const;
};

/// Reads a JSON object: top-level keys identity, fn, tol, out, sequence, S,
/// the numeric parameters, and the blocks contour {c, height, step},
/// series {N, smoothing, delta}, sweep {param, factor, steps}, fn_params {...}.
/// Keys already present in `into` are overwritten.
void apply_config_text(RunConfig& into, const std::string& text);

/// Parses "sqrt2", "golden", "pi" or a decimal number.
double parse_real(const std::string& text);

/// Dispatches to the verifier and returns its report.
VerificationReport run(const RunConfig& config);

struct SweepResult {
  std::vector<VerificationReport> reports;
  std::vector<double> values;  // swept parameter at each step
  /// Least-squares slope of log abs_err against log of the parameter;
  /// NaN when fewer than two steps have a nonzero residual.
  double order = 0.0;
};
SweepResult sweep(const RunConfig& config);

/// Human-readable table, or JSON with --machine.
std::string list_identities(bool machine);

/// Writes the report(s) to path, creating parent directories.
void write_report(const std::string& path, const std::string& json_text);

/// Output path from the config, or $SUMLAB_OUT_DIR/<id>.json, or empty.
std::string resolve_output_path(const RunConfig& config);

}  // namespace sumlab
