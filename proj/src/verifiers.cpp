#include "sumlab/verifiers.hpp"

#include <chrono>
#include <cmath>

#include "sumlab/special.hpp"

namespace sumlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void record_series(VerificationReport& r, const SeriesSpec& s) {
  r.set("N", static_cast<double>(s.cutoff));
  r.set("smoothing", to_string(s.smoothing));
}

void record_contour(VerificationReport& r, const ContourSpec& c) {
  r.set("c", c.abscissa);
  r.set("T", c.height);
  r.set("h", c.step);
}

void require_cutoff(const ArithmeticSequence& seq, std::uint64_t n, const char* what) {
  if (seq.cutoff() < n)
    throw DomainError(std::string(what) + ": sequence cutoff " + std::to_string(seq.cutoff()) +
                      " is below the series cutoff " + std::to_string(n));
}

double cosine_transform(const TestFunction& f, double w, const QuadOptions& quad) {
  if (f.closed_form_cosine) return f.closed_form_cosine(w);
  return fourier_cosine(f, w, quad).value;
}

ContourSpec doubled_height(ContourSpec c) {
  c.height *= 2.0;
  return c;
}

}  // namespace

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> table{
      {"muntz", 1e-7},          {"muntz2", 1e-7},         {"poisson", 1e-9},       {"berndt", 1e-8},
      {"theorem_1_1", 1e-5},    {"davenport", 5e-3},      {"voronoi_sigma", 1e-4}, {"theorem_1_3", 1e-4},
      {"koshlyakov_2_5", 1e-6}, {"mellin_2_2", 1e-5},     {"theorem_2_1", 1e-4},   {"beta_3_4", 1e-9},
      {"parseval_3_5", 1e-6},   {"rearrangement_3", 1e-5}};
  return table;
}

double default_tolerance(const std::string& identity_id) {
  const auto& t = tolerance_table();
  auto it = t.find(identity_id);
  if (it == t.end()) throw DomainError("no default tolerance for identity '" + identity_id + "'");
  return it->second;
}

VerificationReport verify_muntz(const TestFunction& f, double x, const SeriesSpec& series,
                                const ContourSpec& contour, const QuadOptions& quad, double tol) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.identity_id = "muntz";
  r.set("f", f.label);
  r.set("x", x);
  record_series(r, series);
  record_contour(r, contour);
  const auto lhs = muntz_lhs(f, x, contour, quad);
  const auto rhs = muntz_rhs(f, x, series, quad);
  if (!lhs.warning.empty()) r.warn(lhs.warning);
  if (!rhs.warning.empty()) r.warn(rhs.warning);
  r.settle(lhs.value, rhs.value, tol);
  SeriesSpec twice = series;
  twice.cutoff *= 2;
  r.note("rhs_at_2N", muntz_rhs(f, x, twice, quad).value);
  r.note("lhs_at_2T", muntz_lhs(f, x, doubled_height(contour), quad).value.real());
  r.note("rhs_tail_bound", rhs.tail);
  r.note("contour_tail", lhs.tail);
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_muntz2(const TestFunction& f, double x, const SeriesSpec& series,
                                 const ContourSpec& contour, const QuadOptions& quad, double tol) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.identity_id = "muntz2";
  r.set("f", f.label);
  r.set("x", x);
  record_series(r, series);
  record_contour(r, contour);
  const auto lhs = muntz2_lhs(f, x, contour, quad);
  const auto rhs = muntz2_rhs(f, x, series, quad);
  if (!lhs.warning.empty()) r.warn(lhs.warning);
  r.settle(lhs.value, rhs.divisor_weighted.value, tol);
  r.note("literal_plain_sum", rhs.literal.value);
  r.note("literal_residual", std::abs(lhs.value - rhs.literal.value));
  SeriesSpec twice = series;
  twice.cutoff *= 2;
  r.note("rhs_at_2N", muntz2_rhs(f, x, twice, quad).divisor_weighted.value);
  r.note("lhs_at_2T", muntz2_lhs(f, x, doubled_height(contour), quad).value.real());
  r.note("rhs_tail_bound", rhs.divisor_weighted.tail);
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_poisson(const TestFunction& f, const SeriesSpec& series, const QuadOptions& quad,
                                  double tol) {
  const auto t0 = Clock::now();
  series.validate();
  VerificationReport r;
  r.identity_id = "poisson";
  r.set("f", f.label);
  record_series(r, series);
  CompensatedSum<double> lhs, rhs, lhs_half, rhs_half;
  lhs += 0.5 * f.value_at_zero;
  rhs += integral_of(f, quad);
  lhs_half += lhs.value();
  rhs_half += rhs.value();
  for (std::uint64_t n = 1; n <= series.cutoff; ++n) {
    const double fn = f(static_cast<double>(n));
    const double Fn = 2.0 * cosine_transform(f, static_cast<double>(n), quad);
    lhs += fn;
    rhs += Fn;
    if (2 * n <= series.cutoff) {
      lhs_half += fn;
      rhs_half += Fn;
    }
  }
  r.settle(lhs.value(), rhs.value(), tol);
  r.note("lhs_at_half_N", lhs_half.value());
  r.note("rhs_at_half_N", rhs_half.value());
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_theorem_1_1(const ArithmeticSequence& seq, const TestFunction& f,
                                      const SeriesSpec& series, const ContourSpec& contour,
                                      const QuadOptions& quad, double tol) {
  const auto t0 = Clock::now();
  series.validate();
  const std::uint64_t N = series.cutoff;
  require_cutoff(seq, N, "theorem_1_1");
  VerificationReport r;
  r.identity_id = "theorem_1_1";
  r.set("a", seq.label());
  r.set("f", f.label);
  record_series(r, series);
  record_contour(r, contour);

  CompensatedSum<cplx> lhs, lhs_half;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const cplx an = seq.a(n);
    if (an == 0.0) continue;
    const cplx term = an * cosine_transform(f, static_cast<double>(n), quad);
    lhs += term;
    if (2 * n <= N) lhs_half += term;
  }

  auto right_side = [&](const SampledContour& line, std::uint64_t cutoff, double* tail) {
    CompensatedSum<cplx> sum;
    for (std::uint64_t m = 1; m <= cutoff; ++m) {
      const cplx bm = seq.b(m);
      if (bm == 0.0) continue;
      const auto v = line.at(1.0 / static_cast<double>(m));
      if (tail) *tail = std::max(*tail, v.tail);
      sum += 0.5 * bm / static_cast<double>(m) * (v.value + 0.5 * f.value_at_zero);
    }
    return sum.value();
  };
  const auto line = muntz_contour(f, contour, 1, quad);
  double tail = 0.0;
  const cplx rhs = right_side(line, N, &tail);
  r.settle(lhs.value(), rhs, tol);
  r.note("lhs_at_half_N", lhs_half.value().real());
  r.note("rhs_at_half_N", right_side(line, N / 2, nullptr).real());
  r.note("rhs_at_2T", right_side(muntz_contour(f, doubled_height(contour), 1, quad), N, nullptr).real());
  r.note("contour_tail", tail);
  r.wall_time = elapsed_since(t0);
  return r;
}

double berndt_lhs(const ArithmeticSequence& seq, const DivisorSet& S, const TestFunction& f,
                  std::uint64_t cutoff) {
  require_cutoff(seq, cutoff, "berndt");
  CompensatedSum<double> sum;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    const cplx w = restricted_sum(seq.b_values(), n, S);
    if (w != 0.0) sum += 2.0 * w.real() * f(static_cast<double>(n));
  }
  return sum.value();
}

VerificationReport verify_berndt(const ArithmeticSequence& seq, const DivisorSet& S, const TestFunction& f,
                                 const SeriesSpec& series, const QuadOptions& quad, double tol,
                                 std::uint64_t m_terms) {
  const auto t0 = Clock::now();
  series.validate();
  const std::uint64_t N = series.cutoff;
  require_cutoff(seq, N, "berndt");
  if (S.empty()) throw DomainError("berndt: S must be non-empty");
  VerificationReport r;
  r.identity_id = "berndt";
  r.set("a", seq.label());
  r.set("f", f.label);
  std::string members;
  for (auto d : S.members()) members += (members.empty() ? "" : ",") + std::to_string(d);
  r.set("S", members);
  record_series(r, series);

  // literal: the weights are restricted sums of a instead of b
  CompensatedSum<double> literal;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const cplx w = restricted_sum(seq.a_values(), n, S);
    if (w != 0.0) literal += 2.0 * w.real() * f(static_cast<double>(n));
  }
  const double lhs = berndt_lhs(seq, S, f, N);

  const double total = 2.0 * integral_of(f, quad);
  const double scale = std::max(1.0, std::abs(cosine_transform(f, 0.0, quad)));
  CompensatedSum<double> rhs;
  double tail = 0.0;
  std::uint64_t max_terms = 0;
  for (auto k : S.members()) {
    if (k > N) break;
    const double bk = seq.b(k).real();
    if (bk == 0.0) continue;
    const double kk = static_cast<double>(k);
    CompensatedSum<double> inner;
    inner += total;
    std::uint64_t m = 1;
    double last = 0.0;
    for (;; ++m) {
      const double Fm = cosine_transform(f, static_cast<double>(m) / kk, quad);
      inner += 4.0 * Fm;
      last = std::abs(Fm);
      if (m_terms ? m >= m_terms : (last < 1e-17 * scale || m >= 100000 * k)) break;
    }
    max_terms = std::max(max_terms, m);
    tail += std::abs(bk) / kk * 4.0 * last * kk;
    rhs += bk / kk * (inner.value() - f.value_at_zero * kk);
  }
  r.settle(lhs, rhs.value(), tol);
  r.note("literal_lhs", literal.value());
  r.note("literal_residual", std::abs(literal.value() - rhs.value()));
  r.note("m_terms", static_cast<double>(max_terms));
  r.note("m_tail_estimate", tail);
  r.note("lhs_at_half_N", berndt_lhs(seq, S, f, N / 2));
  r.wall_time = elapsed_since(t0);
  return r;
}

bool looks_rational(double x) {
  if (!std::isfinite(x)) return false;
  // continued-fraction convergents p/q of x
  double rest = x;
  double p0 = 1.0, q0 = 0.0, p1 = std::floor(rest), q1 = 1.0;
  const double eps = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
  for (int i = 0; i < 64 && q1 <= 1e6; ++i) {
    if (std::abs(x - p1 / q1) <= eps) return true;
    const double f = rest - std::floor(rest);
    if (f == 0.0) return true;
    rest = 1.0 / f;
    const double a = std::floor(rest);
    const double p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return false;
}

VerificationReport verify_davenport(const ArithmeticSequence& seq, double x, const SeriesSpec& series,
                                    double tol) {
  const auto t0 = Clock::now();
  series.validate();
  const std::uint64_t N = series.cutoff;
  require_cutoff(seq, N, "davenport");
  if (!std::isfinite(x)) throw DomainError("davenport: x must be finite");
  if (looks_rational(x)) throw DomainError("davenport: x = " + format_number(x) + " is numerically rational");
  VerificationReport r;
  r.identity_id = "davenport";
  r.set("b", seq.label());
  r.set("x", x);
  record_series(r, series);

  const auto b = seq.b_values();
  const auto a = seq.a_values();
  const double nn = static_cast<double>(N);
  auto lhs_term = [&](std::uint64_t n) {
    const double bn = b[n].real();
    return bn == 0.0 ? 0.0 : bn / static_cast<double>(n) * (frac(static_cast<double>(n) * x) - 0.5);
  };
  auto rhs_term = [&](std::uint64_t n) {
    const double an = a[n].real();
    return an == 0.0 ? 0.0 : -an / (kPi * static_cast<double>(n)) * std::sin(2.0 * kPi * frac(static_cast<double>(n) * x));
  };
  auto weighted = [&](auto term, auto weight) {
    CompensatedSum<double> s;
    for (std::uint64_t n = 1; n <= N; ++n) {
      const double t = term(n);
      if (t != 0.0) s += weight(n) * t;
    }
    return s.value();
  };
  auto plain = [](std::uint64_t) { return 1.0; };

  double lhs = 0.0, rhs = 0.0;
  switch (series.smoothing) {
    case Smoothing::none:
      lhs = weighted(lhs_term, plain);
      rhs = weighted(rhs_term, plain);
      break;
    case Smoothing::cesaro: {
      auto w = [&](std::uint64_t n) { return 1.0 - static_cast<double>(n) / (nn + 1.0); };
      lhs = weighted(lhs_term, w);
      rhs = weighted(rhs_term, w);
      break;
    }
    case Smoothing::abel: {
      // L(delta) has an O(delta) bias; 2 L(delta) - L(2 delta) removes it
      const double delta = series.abel_delta();
      auto w1 = [&](std::uint64_t n) { return std::exp(-delta * static_cast<double>(n)); };
      auto w2 = [&](std::uint64_t n) { return std::exp(-2.0 * delta * static_cast<double>(n)); };
      const double l1 = weighted(lhs_term, w1), l2 = weighted(lhs_term, w2);
      const double r1 = weighted(rhs_term, w1), r2 = weighted(rhs_term, w2);
      lhs = 2.0 * l1 - l2;
      rhs = 2.0 * r1 - r2;
      r.set("delta", delta);
      r.note("lhs_abel_delta", l1);
      r.note("lhs_abel_2delta", l2);
      r.note("rhs_abel_delta", r1);
      break;
    }
  }
  r.settle(lhs, rhs, tol);

  // unsmoothed partial sums show whether the series settles by itself
  CompensatedSum<double> partial;
  double at_half = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    partial += lhs_term(n);
    if (n == N / 2) at_half = partial.value();
  }
  const double oscillation = std::abs(partial.value() - at_half);
  r.note("lhs_partial_N", partial.value());
  r.note("lhs_partial_half_N", at_half);
  r.note("partial_sum_oscillation", oscillation);
  r.note("rhs_unsmoothed", weighted(rhs_term, plain));
  if (series.smoothing == Smoothing::none && oscillation > tol)
    r.warn("conditional convergence: unsmoothed partial sums move by more than the tolerance");
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_voronoi_sigma(const TestFunction& f, const SeriesSpec& series, const QuadOptions& quad,
                                        double tol, double gamma_shift) {
  const auto t0 = Clock::now();
  series.validate();
  const std::uint64_t N = series.cutoff;
  VerificationReport r;
  r.identity_id = "voronoi_sigma";
  r.set("f", f.label);
  r.set("gamma_shift", gamma_shift);
  record_series(r, series);
  const auto& sieve = sieve_upto(N);
  CompensatedSum<double> sum_f, kernel, kernel_half;
  bool converged = true;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double s = static_cast<double>(sieve.sigma[n]);
    sum_f += s * f(static_cast<double>(n));
    const auto k = voronoi_kernel(f, static_cast<double>(n), quad);
    converged = converged && k.converged;
    kernel += s * k.value;
    if (2 * n <= N) kernel_half += s * k.value;
  }
  if (!converged) r.warn("oscillatory tail of the Bessel kernel did not converge for some n");
  const double main = log_weighted_integral(f, gamma_shift, quad);
  const double lhs = sum_f.value() - 0.25 * f.value_at_zero;
  r.settle(lhs, main + kernel.value(), tol);
  const double literal = sum_f.value() + 0.5 * f.value_at_zero;
  r.note("literal_lhs", literal);
  r.note("literal_residual", std::abs(literal - main - kernel.value()));
  r.note("log_main_term", main);
  r.note("kernel_sum", kernel.value());
  r.note("rhs_at_half_N", main + kernel_half.value());
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_theorem_1_3(const ArithmeticSequence& seq, const TestFunction& f,
                                      const SeriesSpec& series, const ContourSpec& contour,
                                      const QuadOptions& quad, double tol) {
  const auto t0 = Clock::now();
  series.validate();
  const std::uint64_t N = series.cutoff;
  require_cutoff(seq, N, "theorem_1_3");
  const std::uint64_t support = seq.b_support_max();
  if (support > 1000) throw DomainError("theorem_1_3: b must be finitely supported (support within 1000)");
  VerificationReport r;
  r.identity_id = "theorem_1_3";
  r.set("b", seq.label());
  r.set("f", f.label);
  record_series(r, series);
  record_contour(r, contour);

  const auto c = compose_c(seq);
  CompensatedSum<cplx> lhs, lhs_half;
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (c[n] == 0.0) continue;
    const cplx term = c[n] * voronoi_kernel(f, static_cast<double>(n), quad).value;
    lhs += term;
    if (2 * n <= N) lhs_half += term;
  }
  const auto line = muntz_contour(f, contour, 2, quad);
  CompensatedSum<cplx> rhs, literal;
  for (std::uint64_t m = 1; m <= support; ++m) {
    const cplx bm = seq.b(m);
    if (bm == 0.0) continue;
    const cplx v = line.at(1.0 / static_cast<double>(m)).value;
    const double mm = static_cast<double>(m);
    rhs += bm / mm * (v - 0.25 * f.value_at_zero);
    literal += bm / mm * (v + 0.5 * f.value_at_zero);
  }
  r.settle(lhs.value(), rhs.value(), tol);
  r.note("literal_rhs", literal.value().real());
  r.note("literal_residual", std::abs(lhs.value() - literal.value()));
  r.note("lhs_at_half_N", lhs_half.value().real());
  // two readouts of the zeta^2 line integral at x = 1
  const auto readouts = muntz2_rhs(f, 1.0, series, quad);
  const cplx at_one = line.at(1.0).value;
  r.note("line_vs_divisor_weighted_sum", std::abs(at_one - readouts.divisor_weighted.value));
  r.note("line_vs_literal_plain_sum", std::abs(at_one - readouts.literal.value));
  r.wall_time = elapsed_since(t0);
  return r;
}

}  // namespace sumlab
