// Acceptance gate: one PASS/FAIL line per criterion.
//   sumlab_acceptance [--known-failures 7,8]
// Without the flag the exit status is 0 iff every criterion passes. With it,
// the exit status is 0 iff exactly the listed criteria fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sumlab/koshlyakov.hpp"
#include "sumlab/motohashi.hpp"
#include "sumlab/special.hpp"
#include "sumlab/verifiers.hpp"

using namespace sumlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

SeriesSpec series_of(std::uint64_t N, Smoothing s = Smoothing::none) {
  SeriesSpec spec;
  spec.cutoff = N;
  spec.smoothing = s;
  return spec;
}

const QuadOptions kQuad{};
const ContourSpec kLine{0.5, 40.0, 0.05};

Outcome muntz() {
  const auto f = make_test_function("gaussian");
  double worst = 0.0, slowest = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    const auto t0 = Clock::now();
    const auto r = verify_muntz(f, x, series_of(20), kLine, kQuad, 1e-7);
    slowest = std::max(slowest, seconds_since(t0));
    worst = std::max(worst, r.abs_err);
  }
  const double anchor = muntz_rhs(f, 1.0, series_of(20)).value;
  const bool ok = worst <= 1e-7 && slowest < 5.0 && std::abs(anchor - (-0.4567826)) < 5e-8;
  return {ok, fmt("max residual %.1e (tol 1e-7), anchor RHS(1) = %.7f, slowest point %.2fs", worst, anchor, slowest)};
}

Outcome poisson() {
  const auto r = verify_poisson(make_test_function("gaussian"), series_of(20), kQuad, 1e-9);
  return {r.abs_err <= 1e-9, fmt("residual %.1e (tol 1e-9)", r.abs_err)};
}

Outcome theorem_1_1() {
  const auto f = make_test_function("gaussian");
  const auto e = verify_theorem_1_1(sequences::identity_e(20), f, series_of(20), kLine, kQuad, 1e-5);
  const auto s = verify_theorem_1_1(sequences::divisor_count(20), f, series_of(20), kLine, kQuad, 1e-5);
  return {e.abs_err <= 1e-5 && s.abs_err <= 1e-5,
          fmt("a = e: %.1e, a = sigma: %.1e (tol 1e-5)", e.abs_err, s.abs_err)};
}

Outcome berndt() {
  const auto f = make_test_function("gaussian");
  const auto one = verify_berndt(sequences::identity_e(30), DivisorSet({1}), f, series_of(30), kQuad, 1e-8);
  const auto two = verify_berndt(sequences::ones(30), DivisorSet({2}), f, series_of(30), kQuad, 1e-6);
  return {one.abs_err <= 1e-8 && two.abs_err <= 1e-6,
          fmt("S = {1}: %.1e (tol 1e-8), S = {2}, a = 1: %.1e (tol 1e-6)", one.abs_err, two.abs_err)};
}

Outcome davenport() {
  const std::uint64_t N = 1000000;
  const auto t0 = Clock::now();
  const auto r = verify_davenport(sequences::identity_e(N), std::sqrt(2.0), series_of(N, Smoothing::abel), 5e-3);
  const double t = seconds_since(t0);
  const bool anchor = std::abs(r.rhs.real() - (-0.16340)) < 5e-5;
  return {r.abs_err <= 5e-3 && t < 30.0 && anchor,
          fmt("LHS %.6f vs RHS %.6f, residual %.1e (tol 5e-3), %.2fs", r.lhs.real(), r.rhs.real(), r.abs_err, t)};
}

Outcome voronoi() {
  const auto r = verify_voronoi_sigma(make_test_function("gaussian"), series_of(50), kQuad, 1e-4);
  return {r.abs_err <= 1e-4, fmt("residual %.1e with 50 kernel terms (tol 1e-4)", r.abs_err)};
}

// The criterion quotes x Kf(x) + 1/(2 pi) and the residue -1/(2 pi x); both
// constants are half of what the integrals produce.
Outcome koshlyakov_reflected() {
  double literal = 0.0, literal_residue = 0.0, consistent = 0.0, consistent_residue = 0.0;
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    const auto r = verify_koshlyakov_reflected(x, koshlyakov_default_contour(KoshlyakovRoute::reflected), 1e-6);
    literal = std::max(literal, r.diagnostic("literal_residual"));
    literal_residue = std::max(literal_residue, r.diagnostic("literal_residue_residual"));
    consistent = std::max(consistent, r.abs_err);
    consistent_residue = std::max(consistent_residue, r.diagnostic("residue_residual"));
  }
  return {literal <= 1e-6 && literal_residue <= 1e-8,
          fmt("literal: route %.1e (tol 1e-6), residue %.1e (tol 1e-8) | consistent 1/(4 pi): route %.1e, "
              "residue %.1e",
              literal, literal_residue, consistent, consistent_residue)};
}

// The criterion quotes z^{s-2} pi zeta(s) / sin(pi s/2), four times the transform.
Outcome koshlyakov_mellin() {
  double literal = 0.0, consistent = 0.0;
  for (cplx s : {cplx(0.3), cplx(0.5, 2.0), cplx(0.7)}) {
    const auto r = verify_koshlyakov_mellin(s, 1.0, kQuad, 1e-5);
    literal = std::max(literal, r.diagnostic("literal_residual"));
    consistent = std::max(consistent, r.abs_err);
  }
  return {literal <= 1e-5,
          fmt("literal: %.1e (tol 1e-5) | consistent with the factor 1/4: %.1e", literal, consistent)};
}

Outcome theorem_2_1() {
  const auto t0 = Clock::now();
  const auto r = verify_theorem_2_1(sequences::identity_e(20), 1.0, series_of(20), kLine, kQuad, 1e-4);
  const double t = seconds_since(t0);
  return {r.abs_err <= 1e-4 && t < 60.0,
          fmt("residual %.1e (tol 1e-4), %.2fs; literal right side residual %.1e", r.abs_err, t,
              r.diagnostic("literal_residual"))};
}

Outcome beta_parseval() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double beta = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx v(0.5 + 3.0 * u(rng), 10.0 * (u(rng) - 0.5));
    const cplx s(v.real() * (0.05 + 0.9 * u(rng)), 10.0 * (u(rng) - 0.5));
    beta = std::max(beta, verify_beta(s, v, kQuad, 1e-9).abs_err);
  }
  double parseval = 0.0;
  for (double a : {0.0, 0.3})
    for (double x : {1.0, 2.0})
      parseval = std::max(parseval, parseval_check(a, x, {0.75, 60.0, 0.05}, kQuad, 1e-6).abs_err);
  return {beta <= 1e-9 && parseval <= 1e-6,
          fmt("beta max %.1e over 50 points (tol 1e-9), Parseval max %.1e (tol 1e-6)", beta, parseval)};
}

Outcome rearrangement() {
  const auto r = verify_rearrangement(MotohashiInput::gaussian(1.0), kQuad, 1e-5, 1e-3);
  const double r12 = r.diagnostic("r1_r2_residual");
  return {r.abs_err <= 1e-5 && r12 <= 1e-3,
          fmt("R2 vs R3 %.1e (tol 1e-5), R1 vs R2 %.1e (tol 1e-3) at N = 100", r.abs_err, r12)};
}

Outcome infrastructure(Clock::time_point suite_start) {
  const double z2 = std::abs(zeta(cplx(2.0)) - kPi * kPi / 6.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(0.01, 0.99), im(-30.0, 30.0);
  double reflection = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx lhs = std::exp(log_gamma(s) + log_gamma(1.0 - s)) * std::sin(kPi * s);
    reflection = std::max(reflection, std::abs(lhs - kPi) / kPi);
  }
  const double k0 = std::abs(bessel_k0(1.0) - 0.42102443824070833);
  const double y0 = std::abs(bessel_y0(1.0) - 0.08825696421567696);
  const double zero = std::abs(zeta(cplx(0.5, 14.134725141734693)));
  const double elapsed = seconds_since(suite_start);
  const bool ok = z2 <= 1e-14 && reflection <= 1e-10 && k0 <= 1e-14 && y0 <= 1e-14 && zero <= 1e-6 && elapsed < 600.0;
  return {ok, fmt("zeta(2) %.0e, reflection %.0e, K0(1) %.0e, Y0(1) %.0e, |zeta(rho1)| %.0e, suite %.1fs (< 600s)",
                  z2, reflection, k0, y0, zero, elapsed)};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  CLI::App app{"Acceptance criteria"};
  std::string known_text;
  app.add_option("--known-failures", known_text, "comma-separated criteria expected to fail");
  CLI11_PARSE(app, argc, argv);
  std::set<int> known;
  try {
    known = parse_list(known_text);
  } catch (const std::exception&) {
    std::fprintf(stderr, "bad --known-failures list '%s'\n", known_text.c_str());
    return 2;
  }

  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Muntz formula", muntz},
      {"Poisson cosine summation", poisson},
      {"Fourier-cosine series two routes", theorem_1_1},
      {"Berndt restricted sums", berndt},
      {"Davenport expansion", davenport},
      {"Voronoi formula for sigma", voronoi},
      {"Koshlyakov reflected route and residue", koshlyakov_reflected},
      {"Koshlyakov test-function Mellin transform", koshlyakov_mellin},
      {"Koshlyakov-type summation two routes", theorem_2_1},
      {"beta integral and Parseval formula", beta_parseval},
      {"divisor-series rearrangement", rearrangement},
      {"special functions and suite runtime", [start] { return infrastructure(start); }},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.passed) failed.insert(id);
    std::printf("%s %2d  %s: %s%s\n", o.passed ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                !o.passed && known.count(id) ? "  [known]" : "");
  }
  std::printf("%zu/%zu criteria passed in %.1fs\n", criteria.size() - failed.size(), criteria.size(),
              seconds_since(start));
  if (known_text.empty()) return failed.empty() ? 0 : 1;
  if (failed != known) {
    std::printf("failing set differs from the expected known failures\n");
    return 1;
  }
  return 0;
}
