#pragma once

// Rearrangement of the divisor-weighted series
//   sum_n sigma(n) int_0^inf h(y) cos(2 pi n y) dy,
//   h(y) = (y(y+1))^{-1/2} F(f)(log(1 + 1/y)),
// through the Mellin transform of h, the beta integral, the Parseval
// formula for the shifted theta-type series, and the G(a, x) function.

#include <vector>

#include "sumlab/arith.hpp"
#include "sumlab/quadrature.hpp"
#include "sumlab/report.hpp"
#include "sumlab/transform.hpp"

namespace sumlab {

struct MotohashiInput {
  /// Even, rapidly decaying f; exp(-y^2 / A) by default.
  double A = 1.0;
  TestFunction f = scaled_gaussian(1.0);
  SeriesSpec series{100, Smoothing::none, 0.0};
  /// 1/2 < c < 1. The height is raised automatically to cover the
  /// frequencies 2 pi x carried by f.
  ContourSpec contour{0.75, 60.0, 0.05};
  std::uint64_t m_cutoff = 50;

  static MotohashiInput gaussian(double A);
  void validate() const;
};

/// h(y); uses the closed-form cosine transform of f when available.
double h_eval(double y, const MotohashiInput& input, const QuadOptions& quad = {});

struct HZeroLimit {
  double value = 0.0;
  bool converged = false;
  std::vector<double> samples;  // h(10^-k), k = 1..6
};
HZeroLimit h_zero_limit(const MotohashiInput& input, const QuadOptions& quad = {});

/// Registry entry for h with f = exp(-y^2/A).
TestFunction motohashi_h_function(double A);
TestFunction motohashi_h_function(const MotohashiInput& input);

struct BetaIntegral {
  cplx gamma_ratio{};
  cplx quadrature{};
  double discrepancy = 0.0;
};
/// int_0^inf y^{s-1} (1+y)^{-v} dy = Gamma(s) Gamma(v-s) / Gamma(v), 0 < Re s < Re v.
BetaIntegral beta_integral(cplx s, cplx v, const QuadOptions& quad = {});

/// M(h)(s) through the Gamma kernel integrated against f, 1/2 < Re s < 1.
cplx mellin_h(cplx s, const MotohashiInput& input, const QuadOptions& quad = {});
/// M(h)(s) by direct quadrature of y^{s-1} h(y).
cplx mellin_h_direct(cplx s, const MotohashiInput& input, const QuadOptions& quad = {});

/// int_0^inf (sum_n e^{-nxy} (nxy)^{a-1/2} - Gamma(a+1/2)/(xy)) e^{-y} dy.
cplx parseval_lhs(cplx a, double x, const QuadOptions& quad = {});
/// (1/2 pi i) int x^{-s} zeta(s) Gamma(s+a-1/2) Gamma(1-s) ds, Re(1/2-a) < c < 1.
ContourValue parseval_rhs(cplx a, double x, const ContourSpec& contour);
VerificationReport parseval_check(cplx a, double x, const ContourSpec& contour, const QuadOptions& quad,
                                  double tol);

/// Normalisation of G(a, x): consistent divides by Gamma(1/2 + a), which
/// makes G(-2 pi i x, 1/m) the kernel of M^-1(zeta M(h)); literal divides
/// by Gamma(1/2 - a).
enum class GNormalization { consistent, literal };

/// G(a, x) by the contour route. The height is widened to |Im a| + 40 when
/// the supplied contour is shorter.
cplx g_function(cplx a, double x, const ContourSpec& contour,
                GNormalization norm = GNormalization::consistent);
/// G(a, x) by the y-integral; loses accuracy as |Im a| grows.
cplx g_function_direct(cplx a, double x, GNormalization norm = GNormalization::consistent,
                       const QuadOptions& quad = {});

VerificationReport verify_beta(cplx s, cplx v, const QuadOptions& quad, double tol);

/// Three routes for the divisor-weighted series: R1 direct, R2 through the
/// Mellin transform of h, R3 through G. lhs = R2, rhs = R3; R1 - R2 is
/// checked against r1_tol.
VerificationReport verify_rearrangement(const MotohashiInput& input, const QuadOptions& quad, double tol,
                                        double r1_tol = 1e-3);

}  // namespace sumlab
