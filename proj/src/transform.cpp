#include "sumlab/transform.hpp"

#include <cmath>

#include "sumlab/koshlyakov.hpp"
#include "sumlab/motohashi.hpp"
#include "sumlab/special.hpp"

namespace sumlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFirstY0Zero = 0.89357696627916752158;

void require_eval(const TestFunction& f, const char* what) {
  if (!f.has_eval())
    throw DomainError(std::string(what) + ": test function '" + f.label + "' has no point evaluation");
}

double param(const FunctionParams& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

}  // namespace

double TestFunction::operator()(double x) const {
  require_eval(*this, "TestFunction");
  return eval(x);
}

TestFunction scaled_gaussian(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("scaled_gaussian: width parameter must be > 0");
  TestFunction f;
  f.label = "scaled_gaussian";
  f.eval = [a](double x) { return std::exp(-a * x * x); };
  f.value_at_zero = 1.0;
  f.decay_exponent = kInf;
  f.closed_form_mellin = [a](cplx s) { return 0.5 * std::exp(log_gamma(0.5 * s) - 0.5 * s * std::log(a)); };
  f.closed_form_cosine = [a](double w) { return 0.5 * std::sqrt(kPi / a) * std::exp(-kPi * kPi * w * w / a); };
  return f;
}

TestFunction make_test_function(const std::string& label, const FunctionParams& params) {
  if (label == "gaussian") {
    auto f = scaled_gaussian(kPi);
    f.label = "gaussian";
    return f;
  }
  if (label == "scaled_gaussian") return scaled_gaussian(param(params, "a", 1.0));
  if (label == "davenport") {
    // int_0^inf cos(2 pi w y) sin(2 pi x0 y) / y dy: a step of height pi/2 ending at x0
    const double x0 = param(params, "x", std::sqrt(2.0));
    if (!(x0 > 0.0)) throw DomainError("davenport kernel: x must be > 0");
    TestFunction f;
    f.label = "davenport";
    f.eval = [x0](double w) { return w < x0 ? 0.5 * kPi : (w == x0 ? 0.25 * kPi : 0.0); };
    f.value_at_zero = 0.5 * kPi;
    f.decay_exponent = kInf;
    f.closed_form_mellin = [x0](cplx s) { return kPi * std::exp(s * std::log(x0)) / (2.0 * s); };
    f.closed_form_cosine = [x0](double w) {
      return w == 0.0 ? 0.5 * kPi * x0 : std::sin(2.0 * kPi * w * x0) / (4.0 * w);
    };
    return f;
  }
  if (label == "koshlyakov_f") return koshlyakov_test_function(param(params, "z", 1.0));
  if (label == "motohashi_h") return motohashi_h_function(param(params, "A", 1.0));
  throw DomainError("unknown test function '" + label + "'");
}

std::vector<std::string> test_function_labels() {
  return {"gaussian", "scaled_gaussian", "davenport", "koshlyakov_f", "motohashi_h"};
}

void ContourSpec::validate(double lo, double hi) const {
  if (!std::isfinite(abscissa) || !std::isfinite(height) || !std::isfinite(step))
    throw DomainError("contour: non-finite parameter");
  if (!(height > 0.0)) throw DomainError("contour: height T must be > 0");
  if (!(step > 0.0) || step > height / 10.0) throw DomainError("contour: step must satisfy 0 < h <= T/10");
  if (!(abscissa > lo && abscissa < hi))
    throw DomainError("contour: abscissa " + std::to_string(abscissa) + " outside (" + std::to_string(lo) +
                      ", " + std::to_string(hi) + ")");
}

void SeriesSpec::validate() const {
  if (cutoff < 1) throw DomainError("series: cutoff must be >= 1");
  if (smoothing == Smoothing::abel && delta < 0.0) throw DomainError("series: Abel delta must be > 0");
}

double SeriesSpec::abel_delta() const { return delta > 0.0 ? delta : 10.0 / static_cast<double>(cutoff); }

Smoothing parse_smoothing(const std::string& name) {
  if (name == "none") return Smoothing::none;
  if (name == "abel") return Smoothing::abel;
  if (name == "cesaro") return Smoothing::cesaro;
  throw DomainError("unknown smoothing mode '" + name + "'");
}

std::string to_string(Smoothing s) {
  switch (s) {
    case Smoothing::none: return "none";
    case Smoothing::abel: return "abel";
    case Smoothing::cesaro: return "cesaro";
  }
  return "none";
}

QuadResult<cplx> mellin(const TestFunction& f, cplx s, const QuadOptions& quad) {
  require_eval(f, "mellin");
  const double upper = std::min(1.0, f.decay_exponent);
  if (!(s.real() > 0.0 && s.real() < upper))
    throw DomainError("mellin: Re(s) must lie in (0, min(1, m))");
  const double f0 = f.value_at_zero;
  // (0,1]: x = e^{-t}, with f(0) subtracted so the integrand decays like e^{-(Re s + 1) t}
  auto lower = [&](double t) -> cplx {
    if (t > 700.0) return 0.0;
    return std::exp(-s * t) * (f.eval(std::exp(-t)) - f0);
  };
  // [1,inf): x = e^{t}
  auto upper_part = [&](double t) -> cplx {
    if (t > 700.0) return 0.0;
    return std::exp(s * t) * f.eval(std::exp(t));
  };
  auto lo = integrate(lower, 0.0, kInf, quad);
  QuadResult<cplx> hi;
  if (std::isfinite(f.decay_exponent)) {
    // algebraic decay leaves e^{-(m - Re s) t}, too slow for the mapped
    // infinite interval; sum panels until three in a row are negligible
    CompensatedSum<cplx> sum;
    hi.converged = false;
    int quiet = 0;
    for (double t = 0.0; t < 700.0; t += 4.0) {
      auto piece = integrate(upper_part, t, t + 4.0, quad);
      sum += piece.value;
      hi.error += piece.error;
      ++hi.panels;
      quiet = std::abs(piece.value) <= 1e-17 * std::max(std::abs(sum.value()), 1e-300) ? quiet + 1 : 0;
      if (quiet == 3) {
        hi.converged = true;
        break;
      }
    }
    hi.value = sum.value();
  } else {
    hi = integrate(upper_part, 0.0, kInf, quad);
  }
  QuadResult<cplx> r;
  r.value = lo.value + hi.value + f0 / s;
  r.error = lo.error + hi.error;
  r.panels = 2;
  r.converged = lo.converged && hi.converged;
  return r;
}

SampledContour::SampledContour(const std::function<cplx(cplx)>& F, const ContourSpec& spec) : spec_(spec) {
  if (!(spec.height > 0.0) || !(spec.step > 0.0) || spec.step > spec.height / 10.0)
    throw DomainError("contour: requires T > 0 and 0 < h <= T/10");
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * spec.height / spec.step));
  spec_.step = 2.0 * spec.height / static_cast<double>(intervals);
  nodes_.reserve(intervals + 1);
  samples_.reserve(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const cplx s(spec.abscissa, -spec.height + static_cast<double>(k) * spec_.step);
    nodes_.push_back(s);
    samples_.push_back(F(s));
  }
}

ContourValue SampledContour::at(double x, double tol) const {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("inverse_mellin: x must be finite and > 0");
  const double log_x = std::log(x);
  const double tail_from = 0.9 * spec_.height;
  CompensatedSum<cplx> sum;
  double tail = 0.0;
  const std::size_t last = nodes_.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    const double w = (k == 0 || k == last) ? 0.5 : 1.0;
    const cplx term = w * std::exp(-nodes_[k] * log_x) * samples_[k];
    sum += term;
    if (std::abs(nodes_[k].imag()) >= tail_from) tail += std::abs(term);
  }
  const double scale = spec_.step / (2.0 * kPi);
  ContourValue r;
  r.value = scale * sum.value();
  r.tail = scale * tail;
  if (r.tail > tol) r.warning = "tail-dominance: tail estimate " + std::to_string(r.tail) + " exceeds tolerance";
  return r;
}

ContourValue inverse_mellin(const std::function<cplx(cplx)>& F, double x, const ContourSpec& contour, double tol) {
  return SampledContour(F, contour).at(x, tol);
}

std::function<cplx(cplx)> mellin_rule(const TestFunction& f, const QuadOptions& quad) {
  if (f.closed_form_mellin) return f.closed_form_mellin;
  require_eval(f, "mellin_rule");
  return [f, quad](cplx s) { return mellin(f, s, quad).value; };
}

double integral_of(const TestFunction& f, const QuadOptions& quad) {
  require_eval(f, "integral_of");
  if (f.decay_exponent <= 1.0) throw DomainError("integral_of: '" + f.label + "' is not integrable");
  return integrate(f.eval, 0.0, kInf, quad).value;
}

double log_weighted_integral(const TestFunction& f, double gamma_shift, const QuadOptions& quad) {
  require_eval(f, "log_weighted_integral");
  if (f.decay_exponent <= 1.0) throw DomainError("log_weighted_integral: '" + f.label + "' is not integrable");
  const double c = 2.0 * (kEulerGamma + gamma_shift);
  auto near = [&](double t) {
    if (t > 700.0) return 0.0;
    const double x = std::exp(-t);
    return x * f.eval(x) * (c - t);
  };
  auto far = [&](double x) { return f.eval(x) * (std::log(x) + c); };
  return integrate(near, 0.0, kInf, quad).value + integrate(far, 1.0, kInf, quad).value;
}

QuadResult<double> fourier_cosine(const TestFunction& f, double w, const QuadOptions& quad) {
  require_eval(f, "fourier_cosine");
  if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("fourier_cosine: w must be finite and >= 0");
  if (w == 0.0) {
    auto r = integrate(f.eval, 0.0, kInf, quad);
    if (f.decay_exponent <= 1.0) r.converged = false;
    return r;
  }
  const double omega = 2.0 * kPi * w;
  auto g = [&](double x) { return std::cos(omega * x) * f.eval(x); };
  const double first_zero = 0.25 / w;
  auto head = integrate(g, 0.0, first_zero, quad);
  auto tail = panel_integrate(g, first_zero, 0.5 / w, quad);
  tail.value += head.value;
  tail.error += head.error;
  tail.panels += 1;
  return tail;
}

QuadResult<double> voronoi_kernel(const TestFunction& f, double x, const QuadOptions& quad) {
  require_eval(f, "voronoi_kernel");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("voronoi_kernel: x must be finite and > 0");
  const double scale = 4.0 * kPi * std::sqrt(x);
  auto g = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double fy = f.eval(u * u);
    if (fy == 0.0) return 0.0;
    const double r = scale * u;
    return 2.0 * u * fy * (4.0 * bessel_k0(r) - 2.0 * kPi * bessel_y0(r));
  };
  const double first_zero = kFirstY0Zero / scale;
  auto head = integrate(g, 0.0, first_zero, quad);
  auto tail = panel_integrate(g, first_zero, kPi / scale, quad);
  tail.value += head.value;
  tail.error += head.error;
  tail.panels += 1;
  return tail;
}

namespace {

double tail_bound(const TestFunction& f, double x, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  if (std::isfinite(f.decay_exponent))
    return std::abs(f.eval(nn / x)) * nn / std::max(f.decay_exponent - 1.0, 1e-3);
  return std::abs(f.eval((nn + 1.0) / x)) * std::max(1.0, x);
}

}  // namespace

Evaluation muntz_rhs(const TestFunction& f, double x, const SeriesSpec& series, const QuadOptions& quad) {
  require_eval(f, "muntz_rhs");
  series.validate();
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("muntz_rhs: x must be finite and > 0");
  CompensatedSum<double> sum;
  for (std::uint64_t n = 1; n <= series.cutoff; ++n) sum += f.eval(static_cast<double>(n) / x);
  Evaluation e;
  e.value = sum.value() - x * integral_of(f, quad);
  e.tail = tail_bound(f, x, series.cutoff);
  if (e.tail > 1e-10 * std::max(1.0, std::abs(e.value)))
    e.warning = "tail-bound: truncation estimate " + std::to_string(e.tail);
  return e;
}

SampledContour muntz_contour(const TestFunction& f, const ContourSpec& contour, int zeta_power,
                             const QuadOptions& quad) {
  contour.validate(0.0, 1.0);
  auto m = mellin_rule(f, quad);
  return SampledContour(
      [m, zeta_power](cplx s) {
        const cplx z = zeta(s);
        return (zeta_power == 2 ? z * z : z) * m(s);
      },
      contour);
}

ContourValue muntz_lhs(const TestFunction& f, double x, const ContourSpec& contour, const QuadOptions& quad) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("muntz_lhs: x must be finite and > 0");
  return muntz_contour(f, contour, 1, quad).at(1.0 / x);
}

Muntz2Rhs muntz2_rhs(const TestFunction& f, double x, const SeriesSpec& series, const QuadOptions& quad) {
  require_eval(f, "muntz2_rhs");
  series.validate();
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("muntz2_rhs: x must be finite and > 0");
  const auto& sieve = sieve_upto(series.cutoff);
  CompensatedSum<double> plain, weighted;
  for (std::uint64_t n = 1; n <= series.cutoff; ++n) {
    const double v = f.eval(static_cast<double>(n) / x);
    plain += v;
    weighted += static_cast<double>(sieve.sigma[n]) * v;
  }
  // int_0^inf f(y/x)(log y + 2 gamma) dy = x (int f(t)(log t + 2 gamma) dt + log x int f)
  const double weight = x * (log_weighted_integral(f, 0.0, quad) + std::log(x) * integral_of(f, quad));
  const double tail = tail_bound(f, x, series.cutoff);
  Muntz2Rhs r;
  r.literal.value = plain.value() - weight;
  r.literal.tail = tail;
  r.divisor_weighted.value = weighted.value() - weight;
  r.divisor_weighted.tail = tail * (1.0 + 2.0 * std::log(static_cast<double>(series.cutoff) + 1.0));
  return r;
}

ContourValue muntz2_lhs(const TestFunction& f, double x, const ContourSpec& contour, const QuadOptions& quad) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("muntz2_lhs: x must be finite and > 0");
  return muntz_contour(f, contour, 2, quad).at(1.0 / x);
}

}  // namespace sumlab
