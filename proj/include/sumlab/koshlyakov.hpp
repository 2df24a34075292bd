#pragma once

// The Koshlyakov function
//   Kf(x) = 2 sum_n sigma(n) (K0(4 pi e^{i pi/4} sqrt(nx)) + K0(4 pi e^{-i pi/4} sqrt(nx))),
// its vertical-line representations, the theta deficit and the test function
// whose Fourier-cosine transform enters the Koshlyakov summation identity.

#include <cstdint>

#include "sumlab/arith.hpp"
#include "sumlab/quadrature.hpp"
#include "sumlab/report.hpp"
#include "sumlab/transform.hpp"

namespace sumlab {

struct KoshlyakovSeries {
  double value = 0.0;
  double imag_residue = 0.0;  // |Im| of the conjugate-pair sum, should vanish
  std::uint64_t terms = 0;
};

/// Partial sum through N terms; N = 0 picks the cutoff where terms drop
/// below 1e-18.
KoshlyakovSeries koshlyakov_series_detail(double x, std::uint64_t cutoff = 0);
double koshlyakov_series(double x, std::uint64_t cutoff = 0);

/// Lines of integration for Kf:
///  right_line   (1/2 pi i) int_(c) zeta^2(1-s) x^{-s} / (2 cos(pi s/2)) ds, c > 1
///  shifted_line the same integrand on 0 < d < 1, plus the pole residue at s = 1
///  reflected    (1/2 pi i) int_(d) zeta^2(s) x^s / (2 sin(pi s/2)) ds = x Kf(x) + 1/(4 pi)
enum class KoshlyakovRoute { right_line, shifted_line, reflected };

/// Residue of zeta^2(1-s) x^{-s} / (2 cos(pi s/2)) at s = 1: -zeta(0)^2 / (pi x).
double koshlyakov_pole_residue(double x);
/// Constant in x Kf(x) + 1/(4 pi).
inline constexpr double kKoshlyakovShift = 0.25 / 3.14159265358979323846;

ContourSpec koshlyakov_default_contour(KoshlyakovRoute route);

/// The bare line integral of the chosen route.
ContourValue koshlyakov_line_integral(double x, KoshlyakovRoute route, const ContourSpec& contour);
/// Kf(x) recovered from the chosen route.
double koshlyakov_contour(double x, KoshlyakovRoute route, const ContourSpec& contour);
double koshlyakov_contour(double x, KoshlyakovRoute route);

/// sum_{n<=N} e^{-(yn)^2} - sqrt(pi)/(2y). Below y = 0.5 the modular
/// transformation replaces the direct sum. N = 0 picks the cutoff.
double theta_deficit(double y, std::uint64_t cutoff = 0);
/// Direct partial sum only, for cross-checks.
double theta_deficit_direct(double y, std::uint64_t cutoff = 0);

/// f(w) = w^{-2} int_0^inf e^{-(zy/w)^2} y theta_deficit(y) dy by quadrature.
double koshlyakov_f_direct(double w, double z, const QuadOptions& quad = {});
/// Mellin transform of f: z^{s-2} pi zeta(s) / (4 sin(pi s/2)), 0 < Re s < 1.
cplx koshlyakov_f_mellin(cplx s, double z);
/// f(w) by inverse Mellin transform of koshlyakov_f_mellin on Re s = 1/2.
double koshlyakov_f(double w, double z, const ContourSpec& contour = {0.5, 40.0, 0.05});
/// lim_{w -> 0+} f(w) = -1/(4 z^2).
double koshlyakov_f_at_zero(double z);

/// Registry entry: evaluation by the cached inverse-Mellin route.
TestFunction koshlyakov_test_function(double z, const ContourSpec& contour = {0.5, 40.0, 0.05});

/// I(x, z) = int_0^inf cos(2 pi x w) f(w) dw.
QuadResult<double> koshlyakov_i(double x, const TestFunction& f, const QuadOptions& quad = {});

/// sum_n a(n) I(n, z) against (pi / (4z)) sum_m b(m) Kf(zm).
VerificationReport verify_theorem_2_1(const ArithmeticSequence& a, double z, const SeriesSpec& series,
                                      const ContourSpec& contour, const QuadOptions& quad, double tol);

/// x Kf(x) + 1/(4 pi) from the series against the reflected line integral.
VerificationReport verify_koshlyakov_reflected(double x, const ContourSpec& contour, double tol);

/// Numerical Mellin transform of the quadrature-defined f against the closed form.
VerificationReport verify_koshlyakov_mellin(cplx s, double z, const QuadOptions& quad, double tol);

}  // namespace sumlab
