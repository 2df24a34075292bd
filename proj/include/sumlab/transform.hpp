#pragma once

// Mellin and Fourier-cosine transforms, vertical-line inverse Mellin
// quadrature, the divisor-problem Bessel kernel, and the test-function
// registry addressed by label.

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sumlab/arith.hpp"
#include "sumlab/quadrature.hpp"

namespace sumlab {

struct TestFunction {
  std::string label;
  /// Point evaluation on x > 0. Empty for kernels known only through their
  /// transforms.
  std::function<double(double)> eval;
  double value_at_zero = 0.0;
  /// f(x) = O(x^-m) as x -> infinity; infinity for rapid decay.
  double decay_exponent = std::numeric_limits<double>::infinity();
  std::function<cplx(cplx)> closed_form_mellin;
  std::function<double(double)> closed_form_cosine;

  bool has_eval() const { return static_cast<bool>(eval); }
  double operator()(double x) const;
};

using FunctionParams = std::map<std::string, double>;

/// Registry lookup. Labels: gaussian, scaled_gaussian (a), davenport (x),
/// koshlyakov_f (z), motohashi_h (A). Missing parameters take defaults.
TestFunction make_test_function(const std::string& label, const FunctionParams& params = {});
std::vector<std::string> test_function_labels();

/// Gaussian exp(-a x^2) with its closed-form transforms.
TestFunction scaled_gaussian(double a);

struct ContourSpec {
  double abscissa = 0.5;
  double height = 40.0;
  double step = 0.05;

  /// Checks T > 0, 0 < h <= T/10 and lo < c < hi.
  void validate(double lo = 0.0, double hi = 1.0) const;
};

enum class Smoothing { none, abel, cesaro };

struct SeriesSpec {
  std::uint64_t cutoff = 20;
  Smoothing smoothing = Smoothing::none;
  double delta = 0.0;  // Abel parameter; 0 selects 10 / cutoff

  void validate() const;
  double abel_delta() const;
};

Smoothing parse_smoothing(const std::string& name);
std::string to_string(Smoothing s);

/// A value with its truncation or tail estimate and an optional warning.
struct Evaluation {
  double value = 0.0;
  double tail = 0.0;
  std::string warning;
};

struct ContourValue {
  cplx value{};
  double tail = 0.0;
  std::string warning;
};

/// Numerical Mellin transform for 0 < Re s < min(1, m).
QuadResult<cplx> mellin(const TestFunction& f, cplx s, const QuadOptions& quad = {});

/// F sampled once on the nodes of a contour; evaluating the inverse
/// transform at another x only re-weights the cached samples.
class SampledContour {
 public:
  SampledContour(const std::function<cplx(cplx)>& F, const ContourSpec& spec);

  /// (1/2 pi) int_{-T}^{T} x^{-(c+it)} F(c+it) dt by the trapezoid rule.
  ContourValue at(double x, double tol = 1e-10) const;
  const ContourSpec& spec() const { return spec_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<cplx>& nodes() const { return nodes_; }
  const std::vector<cplx>& samples() const { return samples_; }

 private:
  ContourSpec spec_;
  std::vector<cplx> nodes_;
  std::vector<cplx> samples_;
};

ContourValue inverse_mellin(const std::function<cplx(cplx)>& F, double x, const ContourSpec& contour,
                            double tol = 1e-10);

/// Mellin transform of f on the contour: the closed form when present,
/// otherwise numerical quadrature at each node.
std::function<cplx(cplx)> mellin_rule(const TestFunction& f, const QuadOptions& quad = {});

/// int_0^inf cos(2 pi w x) f(x) dx. Half-period panels for w > 0.
QuadResult<double> fourier_cosine(const TestFunction& f, double w, const QuadOptions& quad = {});

/// int_0^inf f(x) dx and int_0^inf f(x) (log x + 2 gamma) dx.
double integral_of(const TestFunction& f, const QuadOptions& quad = {});
double log_weighted_integral(const TestFunction& f, double gamma_shift = 0.0,
                             const QuadOptions& quad = {});

/// int_0^inf f(y) (4 K0(4 pi sqrt(xy)) - 2 pi Y0(4 pi sqrt(xy))) dy with y = u^2.
QuadResult<double> voronoi_kernel(const TestFunction& f, double x, const QuadOptions& quad = {});

/// -x int f + sum_{n<=N} f(n/x).
Evaluation muntz_rhs(const TestFunction& f, double x, const SeriesSpec& series,
                     const QuadOptions& quad = {});
/// (1/2 pi i) int x^s zeta(s) M f(s) ds on Re s = c.
ContourValue muntz_lhs(const TestFunction& f, double x, const ContourSpec& contour,
                       const QuadOptions& quad = {});

struct Muntz2Rhs {
  Evaluation literal;        // plain sum f(n/x)
  Evaluation divisor_weighted;  // sum sigma(n) f(n/x)
};
Muntz2Rhs muntz2_rhs(const TestFunction& f, double x, const SeriesSpec& series,
                     const QuadOptions& quad = {});
ContourValue muntz2_lhs(const TestFunction& f, double x, const ContourSpec& contour,
                        const QuadOptions& quad = {});

/// Contours for the zeta-weighted Müntz integrands, reusable across x.
SampledContour muntz_contour(const TestFunction& f, const ContourSpec& contour, int zeta_power,
                             const QuadOptions& quad = {});

}  // namespace sumlab
