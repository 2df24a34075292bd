// sumlab: run identity verifiers from the command line.
//   sumlab verify <id> [flags]
//   sumlab sweep <id> --param {N|T|h} --factor R --steps K [flags]
//   sumlab list [--machine]
// Exit status: 0 all passed, 1 some report failed, 2 usage or domain error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumlab/runner.hpp"

namespace {

struct Flags {
  std::string identity, fn, x, z, smoothing, out, config, sequence, set_S, param;
  std::vector<std::string> fn_params, extra;
  double c = 0, height = 0, step = 0, tol = 0, delta = 0, factor = 2.0;
  std::uint64_t N = 0;
  int steps = 4;
  bool print_json = false;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("identity", f.identity, "identity id (see `list`)")->required();
  cmd->add_option("--fn", f.fn, "test function label");
  cmd->add_option("--fn-param", f.fn_params, "test function parameter key=value (repeatable)");
  cmd->add_option("--x", f.x, "x (number, sqrt2, golden or pi)");
  cmd->add_option("--z", f.z, "z");
  cmd->add_option("--c", f.c, "contour abscissa");
  cmd->add_option("--height", f.height, "contour half-height T");
  cmd->add_option("--step", f.step, "contour step h");
  cmd->add_option("--N", f.N, "series cutoff");
  cmd->add_option("--smoothing", f.smoothing, "none, abel or cesaro");
  cmd->add_option("--delta", f.delta, "Abel parameter (default 10/N)");
  cmd->add_option("--tol", f.tol, "tolerance");
  cmd->add_option("--out", f.out, "report path (default $SUMLAB_OUT_DIR/<id>.json)");
  cmd->add_option("--config", f.config, "JSON config; flags override it");
  cmd->add_option("--sequence", f.sequence, "arithmetic sequence a (e, one, sigma, zero, id, mu) or b=1,2");
  cmd->add_option("--S", f.set_S, "comma-separated divisor set");
  cmd->add_option("--set", f.extra, "other numeric parameter key=value (repeatable)");
  cmd->add_flag("--json", f.print_json, "print the report JSON to stdout");
}

std::pair<std::string, double> split_pair(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw sumlab::DomainError("expected key=value, got '" + kv + "'");
  return {kv.substr(0, eq), sumlab::parse_real(kv.substr(eq + 1))};
}

sumlab::RunConfig build_config(CLI::App* cmd, const Flags& f) {
  sumlab::RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw sumlab::DomainError("cannot read config '" + f.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    sumlab::apply_config_text(cfg, ss.str());
  }
  cfg.identity_id = f.identity;
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--fn")) cfg.function_label = f.fn;
  for (const auto& kv : f.fn_params) {
    auto [k, v] = split_pair(kv);
    cfg.function_params[k] = v;
  }
  for (const auto& kv : f.extra) {
    auto [k, v] = split_pair(kv);
    cfg.params[k] = v;
  }
  if (given("--x")) cfg.params["x"] = sumlab::parse_real(f.x);
  if (given("--z")) cfg.params["z"] = sumlab::parse_real(f.z);
  if (given("--c")) cfg.abscissa = f.c;
  if (given("--height")) cfg.height = f.height;
  if (given("--step")) cfg.step = f.step;
  if (given("--N")) cfg.cutoff = f.N;
  if (given("--smoothing")) cfg.smoothing = sumlab::parse_smoothing(f.smoothing);
  if (given("--delta")) cfg.delta = f.delta;
  if (given("--tol")) cfg.tolerance = f.tol;
  if (given("--out")) cfg.output_path = f.out;
  if (given("--sequence")) cfg.sequence = f.sequence;
  if (given("--S")) cfg.set_S = f.set_S;
  return cfg;
}

void emit(const sumlab::RunConfig& cfg, const std::string& text, bool print_json) {
  if (print_json) std::cout << text << "\n";
  const auto path = sumlab::resolve_output_path(cfg);
  if (!path.empty()) sumlab::write_report(path, text);
}

int error_exit(const std::string& message) {
  nlohmann::json j{{"error", message}};
  std::cerr << j.dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of summation identities"};
  app.require_subcommand(1);
  Flags f;
  bool machine = false;

  auto* list = app.add_subcommand("list", "list registered identities");
  list->add_flag("--machine", machine, "JSON output");
  auto* verify = app.add_subcommand("verify", "run one verifier");
  add_run_flags(verify, f);
  auto* sweep = app.add_subcommand("sweep", "geometric sweep of N, T or h");
  add_run_flags(sweep, f);
  sweep->add_option("--param", f.param, "N, T or h");
  sweep->add_option("--factor", f.factor, "geometric factor");
  sweep->add_option("--steps", f.steps, "number of steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list->parsed()) {
      std::cout << sumlab::list_identities(machine);
      return 0;
    }
    if (verify->parsed()) {
      const auto cfg = build_config(verify, f);
      const auto report = sumlab::run(cfg);
      emit(cfg, sumlab::to_json(report), f.print_json);
      std::cout << sumlab::summary_line(report) << "\n";
      return report.passed ? 0 : 1;
    }
    auto cfg = build_config(sweep, f);
    if (sweep->count("--param")) cfg.sweep = sumlab::SweepSpec{f.param, f.factor, f.steps};
    if (!cfg.sweep) return error_exit("sweep: --param is required");
    if (sweep->count("--factor")) cfg.sweep->factor = f.factor;
    if (sweep->count("--steps")) cfg.sweep->steps = f.steps;
    const auto result = sumlab::sweep(cfg);
    emit(cfg, sumlab::to_json(result.reports), f.print_json);
    bool all = true;
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
      std::printf("%s=%-12g %s\n", cfg.sweep->parameter.c_str(), result.values[i],
                  sumlab::summary_line(result.reports[i]).c_str());
      all = all && result.reports[i].passed;
    }
    if (std::isnan(result.order))
      std::printf("log-residual slope: n/a\n");
    else
      std::printf("log-residual slope: %.3f\n", result.order);
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    return error_exit(e.what());
  }
}
