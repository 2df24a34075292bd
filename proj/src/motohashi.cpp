#include "sumlab/motohashi.hpp"

#include <chrono>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "sumlab/special.hpp"

namespace sumlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr cplx I{0.0, 1.0};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double softplus(double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

/// Smallest X on a 1/4 grid beyond which |f| stays below 1e-17 |f(0)|.
double effective_support(const TestFunction& f) {
  const double scale = std::max(std::abs(f.value_at_zero), 1e-300);
  for (double x = 0.25; x <= 1e4; x += 0.25)
    if (std::abs(f(x)) < 1e-17 * scale && std::abs(f(x + 0.25)) < 1e-17 * scale) return x;
  throw DomainError("motohashi: f does not decay fast enough for the kernel quadrature");
}

/// Composite 20-point Gauss-Legendre nodes and weights on [0, X].
void composite_gauss(double X, int panels, std::vector<double>& nodes, std::vector<double>& weights) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = rule::abscissa();
  const auto& weight = rule::weights();
  const double half = 0.5 * X / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (2 * p + 1) * half;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      if (abscissa[i] == 0.0) {
        nodes.push_back(mid);
        weights.push_back(half * weight[i]);
        continue;
      }
      nodes.push_back(mid - half * abscissa[i]);
      weights.push_back(half * weight[i]);
      nodes.push_back(mid + half * abscissa[i]);
      weights.push_back(half * weight[i]);
    }
  }
}

ContourSpec widened(const ContourSpec& c, double frequency) {
  ContourSpec w = c;
  w.height = std::max(c.height, std::abs(frequency) + 40.0);
  return w;
}

/// The trapezoid rule aliases a pole at distance d from the line with weight
/// about e^{-2 pi d / h}; the step is capped so that this stays near 1e-16.
ContourSpec refined_near_poles(ContourSpec c, double lower, double upper) {
  const double d = std::min(c.abscissa - lower, upper - c.abscissa);
  if (d > 0.0) c.step = std::min(c.step, 2.0 * kPi * d / 36.0);
  return c;
}

}  // namespace

MotohashiInput MotohashiInput::gaussian(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("motohashi: width A must be finite and > 0");
  MotohashiInput in;
  in.A = A;
  in.f = scaled_gaussian(1.0 / A);
  in.f.label = "gaussian_width";
  return in;
}

void MotohashiInput::validate() const {
  if (!(A > 0.0)) throw DomainError("motohashi: width A must be > 0");
  if (!f.has_eval()) throw DomainError("motohashi: f needs a point evaluation");
  series.validate();
  contour.validate(0.5, 1.0);
  if (m_cutoff < 1) throw DomainError("motohashi: m cutoff must be >= 1");
}

double h_eval(double y, const MotohashiInput& input, const QuadOptions& quad) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("h_eval: y must be finite and > 0");
  const double w = std::log1p(1.0 / y);
  const double ff = input.f.closed_form_cosine ? input.f.closed_form_cosine(w) : fourier_cosine(input.f, w, quad).value;
  if (ff == 0.0) return 0.0;
  return ff / std::sqrt(y * (y + 1.0));
}

HZeroLimit h_zero_limit(const MotohashiInput& input, const QuadOptions& quad) {
  HZeroLimit lim;
  double y = 1.0;
  for (int k = 1; k <= 6; ++k) {
    y /= 10.0;
    lim.samples.push_back(h_eval(y, input, quad));
  }
  const double last = lim.samples.back();
  const double prev = lim.samples[lim.samples.size() - 2];
  double scale = 1.0;
  for (double v : lim.samples) scale = std::max(scale, std::abs(v));
  lim.value = last;
  lim.converged = std::abs(last - prev) <= 1e-10 * scale;
  return lim;
}

TestFunction motohashi_h_function(const MotohashiInput& input) {
  TestFunction h;
  h.label = "motohashi_h";
  h.eval = [input](double y) { return h_eval(y, input); };
  h.value_at_zero = h_zero_limit(input).value;
  h.decay_exponent = 1.0;  // h(y) ~ F(f)(0) / y
  return h;
}

TestFunction motohashi_h_function(double A) { return motohashi_h_function(MotohashiInput::gaussian(A)); }

BetaIntegral beta_integral(cplx s, cplx v, const QuadOptions& quad) {
  if (!(s.real() > 0.0 && s.real() < v.real()))
    throw DomainError("beta_integral: requires 0 < Re s < Re v");
  BetaIntegral b;
  b.gamma_ratio = std::exp(log_gamma(s) + log_gamma(v - s) - log_gamma(v));
  // y = e^u; (1+y)^{-v} = exp(-v softplus(u)) stays finite for large |u|
  auto g = [&](double u) -> cplx { return std::exp(s * u - v * softplus(u)); };
  b.quadrature = integrate(g, -kInf, 0.0, quad).value + integrate(g, 0.0, kInf, quad).value;
  b.discrepancy = std::abs(b.quadrature - b.gamma_ratio);
  return b;
}

cplx mellin_h(cplx s, const MotohashiInput& input, const QuadOptions& quad) {
  if (!(s.real() > 0.5 && s.real() < 1.0)) throw DomainError("mellin_h: requires 1/2 < Re s < 1");
  const double X = effective_support(input.f);
  const cplx lg1 = log_gamma(1.0 - s);
  auto g = [&](double x) -> cplx {
    const double fx = input.f(x);
    if (fx == 0.0) return 0.0;
    const cplx ia = I * (2.0 * kPi * x);
    const cplx minus = std::exp(log_gamma(s - 0.5 - ia) + lg1 - log_gamma(0.5 - ia));
    const cplx plus = std::exp(log_gamma(s - 0.5 + ia) + lg1 - log_gamma(0.5 + ia));
    return 0.5 * fx * (minus + plus);
  };
  return integrate(g, 0.0, X, quad).value;
}

cplx mellin_h_direct(cplx s, const MotohashiInput& input, const QuadOptions& quad) {
  if (!(s.real() > 0.5 && s.real() < 1.0)) throw DomainError("mellin_h: requires 1/2 < Re s < 1");
  return mellin(motohashi_h_function(input), s, quad).value;
}

cplx parseval_lhs(cplx a, double x, const QuadOptions& quad) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("parseval: x must be finite and > 0");
  const cplx g0 = std::exp(log_gamma(a + 0.5));
  // small t: sum_n (nt)^{a-1/2} e^{-nt} - Gamma(a+1/2)/t = t^{a-1/2} sum_k zeta(1/2-a-k) (-t)^k / k!
  constexpr int kTerms = 70;
  std::vector<cplx> coeff(kTerms);
  double inv_fact = 1.0;
  for (int k = 0; k < kTerms; ++k) {
    if (k > 0) inv_fact /= k;
    coeff[k] = zeta(0.5 - a - static_cast<double>(k)) * inv_fact;
  }
  auto phi = [&](double t) -> cplx {
    const cplx lead = std::exp((a - 0.5) * std::log(t));
    if (t < 1.0) {
      cplx sum{};
      double power = 1.0;
      for (int k = 0; k < kTerms; ++k) {
        sum += coeff[k] * power;
        power *= -t;
        if (std::abs(power) < 1e-300) break;
      }
      return lead * sum;
    }
    const auto terms = static_cast<int>(std::ceil(40.0 / t)) + 1;
    CompensatedSum<cplx> sum;
    for (int n = 1; n <= terms; ++n) sum += std::exp((a - 0.5) * std::log(n * t) - n * t);
    sum += -g0 / t;
    return sum.value();
  };
  // y = e^u, split where xy = 1
  auto g = [&](double u) -> cplx {
    const double y = std::exp(u);
    if (y == 0.0 || y > 745.0) return 0.0;
    return phi(x * y) * std::exp(u - y);
  };
  const double split = -std::log(x);
  return integrate(g, -kInf, split, quad).value + integrate(g, split, std::log(745.0), quad).value;
}

ContourValue parseval_rhs(cplx a, double x, const ContourSpec& contour) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("parseval: x must be finite and > 0");
  const double lower = std::max((a - 0.5).real(), (0.5 - a).real());
  auto spec = widened(contour, a.imag());
  spec.validate(lower, 1.0);
  spec = refined_near_poles(spec, lower, 1.0);
  auto F = [a](cplx s) { return zeta(s) * std::exp(log_gamma(s + a - 0.5) + log_gamma(1.0 - s)); };
  return inverse_mellin(F, x, spec);
}

VerificationReport parseval_check(cplx a, double x, const ContourSpec& contour, const QuadOptions& quad,
                                  double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.identity_id = "parseval_3_5";
  r.set("a_re", a.real());
  r.set("a_im", a.imag());
  r.set("x", x);
  r.set("c", contour.abscissa);
  r.set("T", contour.height);
  r.set("h", contour.step);
  const auto rhs = parseval_rhs(a, x, contour);
  if (!rhs.warning.empty()) r.warn(rhs.warning);
  r.settle(parseval_lhs(a, x, quad), rhs.value, tol);
  // with y^{a-1/2} in place of (xy)^{a-1/2} the integrand keeps a non-integrable
  // c/y term near y = 0; its coefficient vanishes only at x = 1
  r.note("literal_mismatch_coefficient",
         std::abs(std::exp(log_gamma(a + 0.5)) * (std::exp(-(a + 0.5) * std::log(x)) - 1.0 / x)));
  r.note("literal_strip_lower", (a - 0.5).real());
  r.note("strip_lower", std::max((a - 0.5).real(), (0.5 - a).real()));
  r.note("contour_tail", rhs.tail);
  r.note("effective_step",
         refined_near_poles(contour, std::max((a - 0.5).real(), (0.5 - a).real()), 1.0).step);
  r.wall_time = elapsed_since(t0);
  return r;
}

namespace {

cplx g_normaliser(cplx a, GNormalization norm) {
  return std::exp(-log_gamma(norm == GNormalization::consistent ? 0.5 + a : 0.5 - a));
}

}  // namespace

cplx g_function(cplx a, double x, const ContourSpec& contour, GNormalization norm) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("g_function: x must be finite and > 0");
  return parseval_rhs(a, x, contour).value * g_normaliser(a, norm);
}

cplx g_function_direct(cplx a, double x, GNormalization norm, const QuadOptions& quad) {
  return parseval_lhs(a, x, quad) * g_normaliser(a, norm);
}

VerificationReport verify_beta(cplx s, cplx v, const QuadOptions& quad, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.identity_id = "beta_3_4";
  r.set("s_re", s.real());
  r.set("s_im", s.imag());
  r.set("v_re", v.real());
  r.set("v_im", v.imag());
  const auto b = beta_integral(s, v, quad);
  r.settle(b.quadrature, b.gamma_ratio, tol);
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_rearrangement(const MotohashiInput& input, const QuadOptions& quad, double tol,
                                        double r1_tol) {
  const auto t0 = std::chrono::steady_clock::now();
  input.validate();
  VerificationReport r;
  r.identity_id = "rearrangement_3";
  r.set("A", input.A);
  r.set("f", input.f.label);
  r.set("N", static_cast<double>(input.series.cutoff));
  r.set("m_cutoff", static_cast<double>(input.m_cutoff));

  const auto h0 = h_zero_limit(input, quad);
  r.note("h0", h0.value);
  if (!h0.converged) r.warn("h(0) limit along y = 10^-k did not settle");

  // f on composite Gauss-Legendre nodes covering its effective support
  const double X = effective_support(input.f);
  std::vector<double> xs, ws;
  composite_gauss(X, 16, xs, ws);
  const std::size_t J = xs.size();
  std::vector<double> wf(J);
  for (std::size_t j = 0; j < J; ++j) wf[j] = ws[j] * input.f(xs[j]);

  ContourSpec spec = input.contour;
  spec.height = std::max(spec.height, 2.0 * kPi * X + 25.0);
  r.set("c", spec.abscissa);
  r.set("T", spec.height);
  r.set("h", spec.step);
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * spec.height / spec.step));
  const double step = 2.0 * spec.height / static_cast<double>(intervals);
  const std::size_t K = intervals + 1;
  std::vector<cplx> nodes(K), zeta_w(K), lg1(K);
  for (std::size_t k = 0; k < K; ++k) {
    nodes[k] = cplx(spec.abscissa, -spec.height + static_cast<double>(k) * step);
    const double trap = (k == 0 || k + 1 == K) ? 0.5 : 1.0;
    zeta_w[k] = trap * step / (2.0 * kPi) * zeta(nodes[k]);
    lg1[k] = log_gamma(1.0 - nodes[k]);
  }

  // kernel[(2j + sign) K + k] = Gamma(s_k - 1/2 + sign i alpha_j) Gamma(1 - s_k) / Gamma(1/2 + sign i alpha_j)
  std::vector<cplx> kernel(2 * J * K);
  std::vector<cplx> literal_ratio(2 * J);
  for (std::size_t j = 0; j < J; ++j) {
    for (int sign = 0; sign < 2; ++sign) {
      const cplx ia = I * ((sign == 0 ? -2.0 : 2.0) * kPi * xs[j]);
      const cplx lg_den = log_gamma(0.5 + ia);
      literal_ratio[2 * j + sign] = std::exp(lg_den - log_gamma(0.5 - ia));
      cplx* row = &kernel[(2 * j + sign) * K];
      for (std::size_t k = 0; k < K; ++k) row[k] = std::exp(log_gamma(nodes[k] - 0.5 + ia) + lg1[k] - lg_den);
    }
  }
  std::vector<cplx> mellin_h_nodes(K, cplx{});
  for (std::size_t j = 0; j < J; ++j) {
    const cplx* minus = &kernel[(2 * j) * K];
    const cplx* plus = &kernel[(2 * j + 1) * K];
    for (std::size_t k = 0; k < K; ++k) mellin_h_nodes[k] += 0.5 * wf[j] * (minus[k] + plus[k]);
  }

  CompensatedSum<double> r2, r3, r3_literal_norm, r3_no_half, r2_half;
  std::vector<cplx> q(K);
  for (std::uint64_t m = 1; m <= input.m_cutoff; ++m) {
    const double log_m = std::log(static_cast<double>(m));
    for (std::size_t k = 0; k < K; ++k) q[k] = std::exp(nodes[k] * log_m) * zeta_w[k];
    // R2: inverse transform of zeta M(h) at 1/m
    CompensatedSum<cplx> inv;
    for (std::size_t k = 0; k < K; ++k) inv += q[k] * mellin_h_nodes[k];
    const double inv_m = 1.0 / static_cast<double>(m);
    const double term2 = inv_m * (inv.value().real() + 0.5 * h0.value);
    r2 += 0.5 * term2;
    if (2 * m <= input.m_cutoff) r2_half += 0.5 * term2;
    // R3: G(+-2 pi i x, 1/m) integrated against f
    CompensatedSum<cplx> g_int, g_int_literal;
    for (std::size_t j = 0; j < J; ++j) {
      for (int sign = 0; sign < 2; ++sign) {
        const cplx* row = &kernel[(2 * j + sign) * K];
        cplx g{};
        for (std::size_t k = 0; k < K; ++k) g += q[k] * row[k];
        g_int += wf[j] * g;
        g_int_literal += wf[j] * g * literal_ratio[2 * j + sign];
      }
    }
    const double gi = g_int.value().real();
    const double gl = g_int_literal.value().real();
    r3 += 2.0 * inv_m * (0.5 * gi + 0.5 * h0.value) / 4.0;
    r3_literal_norm += 2.0 * inv_m * (0.5 * gl + 0.5 * h0.value) / 4.0;
    r3_no_half += 2.0 * inv_m * (gi + 0.5 * h0.value) / 4.0;
  }

  // R1: direct cosine transforms of h
  const TestFunction h = motohashi_h_function(input);
  const auto& sieve = sieve_upto(input.series.cutoff);
  CompensatedSum<double> r1, r1_half;
  bool all_converged = true;
  for (std::uint64_t n = 1; n <= input.series.cutoff; ++n) {
    const auto c = fourier_cosine(h, static_cast<double>(n), quad);
    all_converged = all_converged && c.converged;
    const double term = static_cast<double>(sieve.sigma[n]) * c.value;
    r1 += term;
    if (2 * n <= input.series.cutoff) r1_half += term;
  }
  if (!all_converged) r.warn("oscillatory cosine transform of h did not converge for some n");

  r.settle(r2.value(), r3.value(), tol);
  const double r1_residual = std::abs(r1.value() - r2.value());
  r.note("r1", r1.value());
  r.note("r1_at_half_N", r1_half.value());
  r.note("r2_at_half_m", r2_half.value());
  r.note("r1_r2_residual", r1_residual);
  r.note("r1_tolerance", r1_tol);
  r.note("r3_literal_normalisation", r3_literal_norm.value());
  r.note("r3_literal_normalisation_residual", std::abs(r3_literal_norm.value() - r2.value()));
  r.note("r3_without_inner_half", r3_no_half.value());
  r.note("r3_without_inner_half_residual", std::abs(r3_no_half.value() - r2.value()));
  r.note("kernel_nodes", static_cast<double>(J));
  r.note("contour_nodes", static_cast<double>(K));
  // independent spot checks of the pieces shared by R2 and R3
  const cplx s_spot(0.75, 0.0);
  r.note("mellin_h_route_gap", std::abs(mellin_h(s_spot, input, quad) - mellin_h_direct(s_spot, input, quad)));
  const cplx a_spot = I * (2.0 * kPi * 0.25);
  r.note("g_route_gap", std::abs(g_function(a_spot, 1.0, spec) - g_function_direct(a_spot, 1.0)));
  r.passed = r.passed && r1_residual <= r1_tol;
  r.wall_time = elapsed_since(t0);
  return r;
}

}  // namespace sumlab
