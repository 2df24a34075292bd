#pragma once

// Double-precision complex special functions used by the contour integrands.

#include <complex>
#include <stdexcept>

#include "sumlab/arith.hpp"

namespace sumlab {

/// Raised at a pole of a meromorphic function (Gamma at non-positive
/// integers, zeta at s = 1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

constexpr double euler_gamma() { return kEulerGamma; }

/// A logarithm of Gamma(s). The imaginary part is not normalised to the
/// principal branch; exponentiate differences and sums of these freely.
cplx log_gamma(cplx s);
cplx gamma(cplx s);

/// Riemann zeta. Borwein's accelerated eta series for Re(s) >= 0, the
/// functional equation for Re(s) < 0.
cplx zeta(cplx s);

/// Whether zeta(s) lies in the region where the stated accuracy holds
/// (0 < Re s < 2 with |Im s| <= 200, or its functional-equation image).
bool zeta_in_primary_domain(cplx s);

/// Modified Bessel function K0 for Re(z) > 0.
///
/// Three branches: the ascending series with logarithm for |z| <= 2, the
/// integral K0(z) = int_0^inf exp(-z cosh t) dt by the trapezoid rule for
/// 2 < |z| < 20, and the Hankel asymptotic expansion for |z| >= 20.
cplx bessel_k0(cplx z);
double bessel_k0(double x);

/// Bessel functions of the first and second kind, order zero, x > 0.
double bessel_j0(double x);
double bessel_y0(double x);

/// Branch boundaries of bessel_k0 and bessel_y0, exposed for the
/// matching-annulus checks.
namespace bessel_branches {
inline constexpr double k0_series_radius = 2.0;
inline constexpr double k0_asymptotic_radius = 20.0;
inline constexpr double y0_series_limit = 8.0;
inline constexpr double y0_asymptotic_limit = 25.0;

cplx k0_series(cplx z);
cplx k0_integral(cplx z);
cplx k0_asymptotic(cplx z);
double y0_series(double x);
double y0_integral(double x);
double y0_asymptotic(double x);
}  // namespace bessel_branches

}  // namespace sumlab
