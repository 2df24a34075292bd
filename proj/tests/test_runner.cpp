#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sumlab/runner.hpp"
#include "sumlab/verifiers.hpp"

using namespace sumlab;

namespace {

RunConfig config_for(const std::string& id) {
  RunConfig c;
  c.identity_id = id;
  return c;
}

std::string cli() {
  if (const char* p = std::getenv("SUMLAB_CLI"); p && *p) return p;
#ifdef SUMLAB_CLI
  return SUMLAB_CLI;
#else
  return "";
#endif
}

// exit status of a shell command
int shell(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sumlab_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run dispatches muntz with the documented residual") {
  auto c = config_for("muntz");
  c.function_label = "gaussian";
  c.params["x"] = 1.0;
  const auto r = run(c);
  CHECK(r.identity_id == "muntz");
  CHECK(r.passed);
  CHECK(r.abs_err <= 1e-7);
  CHECK(r.tolerance == default_tolerance("muntz"));
}

TEST_CASE("davenport reports carry smoothing diagnostics") {
  auto c = config_for("davenport");
  c.params["x"] = parse_real("sqrt2");
  const auto r = run(c);
  CHECK(r.passed);
  CHECK(r.parameters.at("smoothing") == "abel");
  CHECK(!std::isnan(r.diagnostic("lhs_abel_delta")));
  CHECK(!std::isnan(r.diagnostic("partial_sum_oscillation")));
}

TEST_CASE("every registered identity runs with its defaults") {
  for (const auto& info : identity_registry()) {
    CAPTURE(info.id);
    const auto r = run(config_for(info.id));
    CHECK(r.identity_id == info.id);
    CHECK(std::isfinite(r.abs_err));
    CHECK(r.passed);
  }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(run(config_for("foo")), DomainError);
  auto c = config_for("muntz");
  c.function_label = "nonesuch";
  CHECK_THROWS_AS(run(c), DomainError);
  c = config_for("muntz");
  c.tolerance = -1.0;
  CHECK_THROWS_AS(run(c), DomainError);
  CHECK_THROWS_AS(parse_real("1.5x"), DomainError);
  CHECK(parse_real("golden") == doctest::Approx(1.6180339887498949));
  CHECK(parse_real("2.5e-3") == 2.5e-3);
}

TEST_CASE("report JSON round trip is lossless") {
  auto c = config_for("theorem_1_1");
  const auto r = run(c);
  const auto back = report_from_json(to_json(r));
  CHECK(back.identity_id == r.identity_id);
  CHECK(back.parameters == r.parameters);
  CHECK(back.lhs == r.lhs);
  CHECK(back.rhs == r.rhs);
  CHECK(back.abs_err == r.abs_err);
  CHECK(back.rel_err == r.rel_err);
  CHECK(back.tolerance == r.tolerance);
  CHECK(back.passed == r.passed);
  CHECK(back.wall_time == r.wall_time);
  REQUIRE(back.diagnostics.size() == r.diagnostics.size());
  for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
    CHECK(back.diagnostics[i].first == r.diagnostics[i].first);
    CHECK(back.diagnostics[i].second == r.diagnostics[i].second);
  }
  CHECK(to_json(back) == to_json(r));
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("config text with flags layered on top") {
  RunConfig c;
  apply_config_text(c, R"({"identity": "muntz", "x": "sqrt2", "tol": 1e-6,
                           "contour": {"c": 0.4, "height": 30, "step": 0.1},
                           "series": {"N": 25},
                           "fn_params": {"a": 0.7}, "fn": "scaled_gaussian"})");
  CHECK(c.identity_id == "muntz");
  CHECK(c.params.at("x") == doctest::Approx(std::sqrt(2.0)));
  CHECK(*c.abscissa == 0.4);
  CHECK(*c.height == 30.0);
  CHECK(*c.cutoff == 25);
  CHECK(*c.tolerance == 1e-6);
  const auto r = run(c);
  CHECK(r.parameters.at("c") == "0.40000000000000002");
  CHECK(r.passed);
  apply_config_text(c, R"({"contour": {"c": 0.6}})");
  CHECK(*c.abscissa == 0.6);
  CHECK(*c.height == 30.0);
  CHECK_THROWS_AS(apply_config_text(c, "{not json"), DomainError);
  CHECK_THROWS_AS(apply_config_text(c, R"({"contour": [1, 2]})"), DomainError);
}

TEST_CASE("sweeps") {
  SUBCASE("T for muntz converges geometrically") {
    auto c = config_for("muntz");
    c.height = 5.0;
    c.step = 0.05;
    c.sweep = SweepSpec{"T", 2.0, 4};
    const auto s = sweep(c);
    REQUIRE(s.reports.size() == 4);
    CHECK(s.values == std::vector<double>{5.0, 10.0, 20.0, 40.0});
    for (std::size_t i = 1; i < 4; ++i) CHECK(s.reports[i].abs_err < s.reports[i - 1].abs_err);
    CHECK(s.reports[1].abs_err > 1e3 * s.reports[2].abs_err);
    CHECK(s.reports[3].abs_err < 1e-12);
    CHECK(s.order < -5.0);
  }
  SUBCASE("N for davenport plateaus at the smoothing floor") {
    auto c = config_for("davenport");
    c.cutoff = 10000;
    c.sweep = SweepSpec{"N", 10.0, 3};
    const auto s = sweep(c);
    REQUIRE(s.reports.size() == 3);
    // Abel smoothing at delta = 10/N leaves an error that shrinks slowly, not geometrically
    CHECK(s.reports[2].abs_err > 1e-3 * s.reports[0].abs_err);
    for (const auto& r : s.reports) CHECK(r.abs_err < 5e-2);
  }
  SUBCASE("a single step is a plain run") {
    auto c = config_for("poisson");
    c.sweep = SweepSpec{"N", 2.0, 1};
    const auto s = sweep(c);
    REQUIRE(s.reports.size() == 1);
    auto plain = c;
    plain.sweep.reset();
    const auto r = run(plain);
    CHECK(s.reports[0].lhs == r.lhs);
    CHECK(s.reports[0].rhs == r.rhs);
    CHECK(std::isnan(s.order));
  }
  SUBCASE("bad sweep specs") {
    auto c = config_for("muntz");
    c.sweep = SweepSpec{"x", 2.0, 3};
    CHECK_THROWS_AS(sweep(c), DomainError);
    c.sweep = SweepSpec{"T", 1.0, 3};
    CHECK_THROWS_AS(sweep(c), DomainError);
  }
}

TEST_CASE("identity list") {
  const auto text = list_identities(false);
  for (const char* id : {"berndt", "theorem_1_1", "davenport", "voronoi_sigma", "theorem_1_3", "koshlyakov_2_5",
                         "theorem_2_1", "parseval_3_5", "rearrangement_3"})
    CHECK(text.find(id) != std::string::npos);
  CHECK(list_identities(false) == text);
  const auto machine = nlohmann::json::parse(list_identities(true));
  REQUIRE(machine.is_array());
  REQUIRE(machine.size() == identity_registry().size());
  for (std::size_t i = 0; i < machine.size(); ++i) {
    const auto& info = identity_registry()[i];
    CHECK(machine[i]["id"] == info.id);
    CHECK(machine[i]["anchor"] == info.anchor);
    CHECK(text.find(info.anchor) != std::string::npos);
  }
}

TEST_CASE("report files") {
  const auto dir = scratch_dir("files");
  auto c = config_for("poisson");
  c.output_path = (dir / "nested" / "p.json").string();
  CHECK(resolve_output_path(c) == c.output_path);
  const auto r = run(c);
  write_report(resolve_output_path(c), to_json(r));
  CHECK(report_from_json(slurp(c.output_path)).lhs == r.lhs);
  c.output_path.clear();
  ::setenv("SUMLAB_OUT_DIR", dir.c_str(), 1);
  CHECK(resolve_output_path(c) == (dir / "poisson.json").string());
  ::unsetenv("SUMLAB_OUT_DIR");
  CHECK(resolve_output_path(c).empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("command line") {
  const std::string exe = cli();
  if (exe.empty()) {
    MESSAGE("SUMLAB_CLI not set; skipping command-line checks");
    return;
  }
  const auto dir = scratch_dir("cli");
  const std::string err = (dir / "err.txt").string();
  const std::string out = (dir / "out.json").string();

  CHECK(shell(exe + " verify muntz --fn gaussian --x 1 --out " + out + " > /dev/null") == 0);
  const auto r = report_from_json(slurp(out));
  CHECK(r.abs_err <= 1e-7);

  CHECK(shell(exe + " verify foo 2> " + err + " > /dev/null") == 2);
  const auto e = nlohmann::json::parse(slurp(err));
  CHECK(e.contains("error"));
  CHECK(shell(exe + " verify muntz --fn nonesuch > /dev/null 2>&1") == 2);
  CHECK(shell(exe + " bogus > /dev/null 2>&1") == 2);

  // a deliberately unreachable tolerance fails with exit 1
  CHECK(shell(exe + " verify davenport --N 1000 --tol 1e-12 > /dev/null") == 1);

  // the config file is overridden by flags of the same name
  const auto cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"identity": "muntz", "x": 2, "contour": {"height": 30}})";
  CHECK(shell(exe + " verify muntz --config " + cfg.string() + " --x 0.5 --out " + out + " > /dev/null") == 0);
  const auto layered = report_from_json(slurp(out));
  CHECK(layered.parameters.at("x") == "0.5");
  CHECK(layered.parameters.at("T") == "30");

  CHECK(shell(exe + " sweep muntz --param T --factor 2 --steps 2 --height 20 > /dev/null") == 0);
  CHECK(shell(exe + " sweep muntz --param T --factor 2 --steps 2 --height 5 > /dev/null") == 1);
  CHECK(shell(exe + " list --machine > " + out) == 0);
  CHECK(nlohmann::json::parse(slurp(out)).size() == identity_registry().size());
  std::filesystem::remove_all(dir);
}
