#pragma once

// Two-sided evaluations of the summation identities. Each verifier computes
// both sides independently and returns a VerificationReport. Where a printed
// constant disagrees with the corrected one, the report's lhs/rhs follow the
// consistent reading and the literal reading is attached as a diagnostic.

#include <map>
#include <string>

#include "sumlab/arith.hpp"
#include "sumlab/quadrature.hpp"
#include "sumlab/report.hpp"
#include "sumlab/transform.hpp"

namespace sumlab {

/// Default tolerance per identity id.
const std::map<std::string, double>& tolerance_table();
double default_tolerance(const std::string& identity_id);

/// sum_{n<=N} f(n/x) - x int f against the zeta-weighted line integral.
VerificationReport verify_muntz(const TestFunction& f, double x, const SeriesSpec& series,
                                const ContourSpec& contour, const QuadOptions& quad, double tol);

/// The zeta^2 analogue. lhs is the line integral, rhs the divisor-weighted
/// readout; the plain-sum readout is a diagnostic.
VerificationReport verify_muntz2(const TestFunction& f, double x, const SeriesSpec& series,
                                 const ContourSpec& contour, const QuadOptions& quad, double tol);

/// f(0)/2 + sum f(n) against int f + 2 sum F(f)(n).
VerificationReport verify_poisson(const TestFunction& f, const SeriesSpec& series, const QuadOptions& quad,
                                  double tol);

/// sum a(n) F(f)(n) against (1/2) sum (b(m)/m) (M^-1[zeta M f](1/m) + f(0)/2).
VerificationReport verify_theorem_1_1(const ArithmeticSequence& seq, const TestFunction& f,
                                      const SeriesSpec& series, const ContourSpec& contour,
                                      const QuadOptions& quad, double tol);

/// Bilateral restricted sum with a(n, S) = sum_{d|n, d in S} b(d) against the
/// Poisson-transformed side. m_terms = 0 truncates the m-sum automatically.
VerificationReport verify_berndt(const ArithmeticSequence& seq, const DivisorSet& S, const TestFunction& f,
                                 const SeriesSpec& series, const QuadOptions& quad, double tol,
                                 std::uint64_t m_terms = 0);

/// Consistent left-hand side of the restricted sum, exposed for additivity checks.
double berndt_lhs(const ArithmeticSequence& seq, const DivisorSet& S, const TestFunction& f,
                  std::uint64_t cutoff);

/// True when a convergent p/q with q <= 1e6 reproduces x to 4 ulp.
bool looks_rational(double x);

/// sum (b(n)/n)({nx} - 1/2) against -(1/pi) sum (a(n)/n) sin(2 pi n x), both
/// smoothed the same way.
VerificationReport verify_davenport(const ArithmeticSequence& seq, double x, const SeriesSpec& series,
                                    double tol);

/// sum sigma(n) f(n) - f(0)/4 against int f(log x + 2 gamma) + sum sigma(n) K f(n).
/// gamma_shift perturbs the constant for sensitivity checks.
VerificationReport verify_voronoi_sigma(const TestFunction& f, const SeriesSpec& series, const QuadOptions& quad,
                                        double tol, double gamma_shift = 0.0);

/// sum c(n) K f(n), c = b * sigma, against
/// sum_{m in supp b} (b(m)/m) (M^-1[zeta^2 M f](1/m) - f(0)/4).
VerificationReport verify_theorem_1_3(const ArithmeticSequence& seq, const TestFunction& f,
                                      const SeriesSpec& series, const ContourSpec& contour,
                                      const QuadOptions& quad, double tol);

}  // namespace sumlab
