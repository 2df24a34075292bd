#include "sumlab/koshlyakov.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "sumlab/special.hpp"

namespace sumlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrtPi = std::sqrt(kPi);

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t theta_cutoff(double y) { return static_cast<std::uint64_t>(std::ceil(6.5 / y)) + 1; }

}  // namespace

KoshlyakovSeries koshlyakov_series_detail(double x, std::uint64_t cutoff) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("koshlyakov_series: x must be finite and > 0");
  // terms decay like exp(-2 sqrt2 pi sqrt(nx)); n x >= 25 puts them below 1e-18
  if (cutoff == 0) cutoff = static_cast<std::uint64_t>(std::ceil(25.0 / x)) + 1;
  const auto& sieve = sieve_upto(cutoff);
  const cplx rot = std::polar(4.0 * kPi, kPi / 4.0);
  CompensatedSum<cplx> sum;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    const double r = std::sqrt(static_cast<double>(n) * x);
    const cplx pair = bessel_k0(rot * r) + bessel_k0(std::conj(rot) * r);
    sum += static_cast<double>(sieve.sigma[n]) * pair;
  }
  KoshlyakovSeries out;
  out.value = 2.0 * sum.value().real();
  out.imag_residue = 2.0 * std::abs(sum.value().imag());
  out.terms = cutoff;
  if (out.imag_residue > 1e-12 * std::max(1.0, std::abs(out.value)))
    throw DomainError("koshlyakov_series: conjugate pair left an imaginary residue");
  return out;
}

double koshlyakov_series(double x, std::uint64_t cutoff) { return koshlyakov_series_detail(x, cutoff).value; }

double koshlyakov_pole_residue(double x) {
  const double z0 = -0.5;  // zeta(0)
  return -z0 * z0 / (kPi * x);
}

ContourSpec koshlyakov_default_contour(KoshlyakovRoute route) {
  if (route == KoshlyakovRoute::right_line) return {1.25, 60.0, 0.05};
  return {0.5, 60.0, 0.05};
}

ContourValue koshlyakov_line_integral(double x, KoshlyakovRoute route, const ContourSpec& contour) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("koshlyakov_contour: x must be finite and > 0");
  auto cos_form = [](cplx s) {
    const cplx z = zeta(1.0 - s);
    return z * z / (2.0 * std::cos(0.5 * kPi * s));
  };
  switch (route) {
    case KoshlyakovRoute::right_line:
      contour.validate(1.0, 3.0);
      return inverse_mellin(cos_form, x, contour);
    case KoshlyakovRoute::shifted_line:
      contour.validate(0.0, 1.0);
      return inverse_mellin(cos_form, x, contour);
    case KoshlyakovRoute::reflected:
      contour.validate(0.0, 1.0);
      return inverse_mellin(
          [](cplx s) {
            const cplx z = zeta(s);
            return z * z / (2.0 * std::sin(0.5 * kPi * s));
          },
          1.0 / x, contour);
  }
  throw DomainError("koshlyakov_contour: unknown route");
}

double koshlyakov_contour(double x, KoshlyakovRoute route, const ContourSpec& contour) {
  const double v = koshlyakov_line_integral(x, route, contour).value.real();
  switch (route) {
    case KoshlyakovRoute::right_line: return v;
    case KoshlyakovRoute::shifted_line: return koshlyakov_pole_residue(x) + v;
    case KoshlyakovRoute::reflected: return (v - kKoshlyakovShift) / x;
  }
  return v;
}

double koshlyakov_contour(double x, KoshlyakovRoute route) {
  return koshlyakov_contour(x, route, koshlyakov_default_contour(route));
}

double theta_deficit_direct(double y, std::uint64_t cutoff) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("theta_deficit: y must be finite and > 0");
  if (cutoff == 0) cutoff = theta_cutoff(y);
  CompensatedSum<double> sum;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    const double t = y * static_cast<double>(n);
    sum += std::exp(-t * t);
  }
  sum += -kSqrtPi / (2.0 * y);
  return sum.value();
}

double theta_deficit(double y, std::uint64_t cutoff) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("theta_deficit: y must be finite and > 0");
  if (y >= 0.5) return theta_deficit_direct(y, cutoff);
  // sum_{n>=1} e^{-(yn)^2} = sqrt(pi)/(2y) - 1/2 + (sqrt(pi)/y) sum_{k>=1} e^{-(pi k/y)^2}
  double dual = 0.0;
  for (int k = 1; k < 10; ++k) {
    const double t = kPi * k / y;
    const double term = std::exp(-t * t);
    if (term == 0.0) break;
    dual += term;
  }
  return -0.5 + kSqrtPi / y * dual;
}

double koshlyakov_f_direct(double w, double z, const QuadOptions& quad) {
  if (!(w > 0.0) || !(z > 0.0)) throw DomainError("koshlyakov_f: w and z must be > 0");
  // y = w v / z turns the Gaussian weight into e^{-v^2}
  auto g = [&](double v) {
    if (v <= 0.0) return 0.0;
    return std::exp(-v * v) * v * theta_deficit(w * v / z);
  };
  // theta_deficit changes shape on 0.5 < y < 6; split there so large w does
  // not hide that stretch inside one panel
  double breaks[] = {0.0, 0.5 * z / w, 6.0 * z / w, 8.0};
  CompensatedSum<double> sum;
  for (int i = 0; i < 3; ++i) {
    const double a = std::min(breaks[i], 8.0), b = std::min(breaks[i + 1], 8.0);
    if (b > a) sum += integrate(g, a, b, quad).value;
  }
  return sum.value() / (z * z);
}

cplx koshlyakov_f_mellin(cplx s, double z) {
  if (!(z > 0.0)) throw DomainError("koshlyakov_f_mellin: z must be > 0");
  return std::exp((s - 2.0) * std::log(z)) * kPi * zeta(s) / (4.0 * std::sin(0.5 * kPi * s));
}

double koshlyakov_f_at_zero(double z) { return -0.25 / (z * z); }

double koshlyakov_f(double w, double z, const ContourSpec& contour) {
  if (!(w > 0.0)) throw DomainError("koshlyakov_f: w must be > 0");
  contour.validate(0.0, 1.0);
  return inverse_mellin([z](cplx s) { return koshlyakov_f_mellin(s, z); }, w, contour).value.real();
}

TestFunction koshlyakov_test_function(double z, const ContourSpec& contour) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("koshlyakov_f: z must be finite and > 0");
  contour.validate(0.0, 1.0);
  auto sampled = std::make_shared<const SampledContour>([z](cplx s) { return koshlyakov_f_mellin(s, z); }, contour);
  TestFunction f;
  f.label = "koshlyakov_f";
  f.eval = [sampled](double w) { return sampled->at(w).value.real(); };
  f.value_at_zero = koshlyakov_f_at_zero(z);
  f.decay_exponent = 1.0;  // f(w) ~ -pi / (4 z w)
  f.closed_form_mellin = [z](cplx s) { return koshlyakov_f_mellin(s, z); };
  return f;
}

QuadResult<double> koshlyakov_i(double x, const TestFunction& f, const QuadOptions& quad) {
  return fourier_cosine(f, x, quad);
}

VerificationReport verify_theorem_2_1(const ArithmeticSequence& a, double z, const SeriesSpec& series,
                                      const ContourSpec& contour, const QuadOptions& quad, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("theorem_2_1: z must be finite and > 0");
  series.validate();
  if (series.cutoff > a.cutoff()) throw DomainError("theorem_2_1: series cutoff exceeds the sequence cutoff");
  const auto f = koshlyakov_test_function(z, contour);
  VerificationReport r;
  r.identity_id = "theorem_2_1";
  r.set("z", z);
  r.set("N", static_cast<double>(series.cutoff));
  r.set("sequence", a.label());
  r.set("c", contour.abscissa);
  r.set("T", contour.height);
  r.set("h", contour.step);

  CompensatedSum<double> lhs;
  for (std::uint64_t n = 1; n <= series.cutoff; ++n) {
    const cplx an = a.a(n);
    if (an == cplx{}) continue;
    const auto in = koshlyakov_i(static_cast<double>(n), f, quad);
    if (!in.converged) r.warn("cosine transform at n=" + std::to_string(n) + " did not converge");
    lhs += an.real() * in.value;
  }
  CompensatedSum<double> rhs, literal;
  for (std::uint64_t m = 1; m <= series.cutoff; ++m) {
    const cplx bm = a.b(m);
    if (bm == cplx{}) continue;
    const double zm = z * static_cast<double>(m);
    const double kf = koshlyakov_series(zm);
    rhs += bm.real() * kf;
    literal += bm.real() / static_cast<double>(m) * (zm * kf + 0.5 / kPi);
  }
  const double rhs_value = kPi / (4.0 * z) * rhs.value();
  const double literal_value = 0.5 * z * z * literal.value();
  r.settle(lhs.value(), rhs_value, tol);
  r.note("literal_rhs", literal_value);
  r.note("literal_residual", std::abs(lhs.value() - literal_value));
  r.note("a_support_max", static_cast<double>(a.a_support_max()));
  if (a.a_support_max() == a.cutoff()) r.warn("a is not finitely supported within the cutoff; sums are truncated");

  // the bracket zm Kf(zm) + 1/(4 pi) against the reflected line integral at m = 1
  const auto line = koshlyakov_line_integral(z, KoshlyakovRoute::reflected, contour);
  r.note("reflected_route_residual", std::abs(z * koshlyakov_series(z) + kKoshlyakovShift - line.value.real()));
  // the two evaluations of f at w = 1
  const double spot = std::abs(f(1.0) - koshlyakov_f_direct(1.0, z, quad));
  r.note("f_route_spot_check", spot);
  if (spot > 1e-5) r.warn("inverse-Mellin and quadrature evaluations of f disagree");
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_koshlyakov_reflected(double x, const ContourSpec& contour, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.identity_id = "koshlyakov_2_5";
  r.set("x", x);
  r.set("c", contour.abscissa);
  r.set("T", contour.height);
  r.set("h", contour.step);
  const auto series = koshlyakov_series_detail(x);
  const auto line = koshlyakov_line_integral(x, KoshlyakovRoute::reflected, contour);
  if (!line.warning.empty()) r.warn(line.warning);
  r.settle(x * series.value + kKoshlyakovShift, line.value, tol);
  r.note("series_terms", static_cast<double>(series.terms));
  r.note("series_imag_residue", series.imag_residue);
  r.note("literal_lhs", x * series.value + 0.5 / kPi);
  r.note("literal_residual", std::abs(x * series.value + 0.5 / kPi - line.value.real()));

  // residue bookkeeping between the right line and the shifted line
  const auto right = koshlyakov_line_integral(x, KoshlyakovRoute::right_line,
                                              {1.25, std::max(60.0, contour.height), contour.step});
  const auto shifted = koshlyakov_line_integral(x, KoshlyakovRoute::shifted_line, contour);
  const double difference = right.value.real() - shifted.value.real();
  r.note("line_difference", difference);
  r.note("residue_residual", std::abs(difference - koshlyakov_pole_residue(x)));
  r.note("literal_residue_residual", std::abs(difference + 0.5 / (kPi * x)));
  r.note("right_line_vs_series", std::abs(right.value.real() - series.value));
  r.wall_time = elapsed_since(t0);
  return r;
}

VerificationReport verify_koshlyakov_mellin(cplx s, double z, const QuadOptions& quad, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.identity_id = "mellin_2_2";
  r.set("s_re", s.real());
  r.set("s_im", s.imag());
  r.set("z", z);
  TestFunction f;
  f.label = "koshlyakov_f_quadrature";
  f.eval = [z, quad](double w) { return koshlyakov_f_direct(w, z, quad); };
  f.value_at_zero = koshlyakov_f_at_zero(z);
  f.decay_exponent = 1.0;
  const auto numeric = mellin(f, s, quad);
  if (!numeric.converged) r.warn("Mellin quadrature did not reach its tolerance");
  const cplx closed = koshlyakov_f_mellin(s, z);
  r.settle(numeric.value, closed, tol);
  r.note("literal_closed_form_re", (4.0 * closed).real());
  r.note("literal_closed_form_im", (4.0 * closed).imag());
  r.note("literal_residual", std::abs(numeric.value - 4.0 * closed));
  r.wall_time = elapsed_since(t0);
  return r;
}

}  // namespace sumlab
