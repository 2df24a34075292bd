#include "sumlab/special.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace sumlab {

namespace {

constexpr cplx I{0.0, 1.0};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log(sin(pi z)) without overflow for large |Im z|
cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 15.0) return std::log(std::sin(kPi * z));
  const cplx w = kPi * z;
  if (z.imag() > 0.0) {
    const cplx q = std::exp(2.0 * I * w);
    return -I * w + std::log(1.0 - q) - cplx(std::log(2.0), -kPi / 2.0);
  }
  const cplx q = std::exp(-2.0 * I * w);
  return I * w + std::log(1.0 - q) - cplx(std::log(2.0), kPi / 2.0);
}

// Lanczos g = 7, n = 9
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx s) {
  s -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (s + static_cast<double>(i));
  const cplx t = s + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (s + 0.5) * std::log(t) - t + std::log(x);
}

cplx eta_borwein(cplx s, int n) {
  std::vector<double> d(n + 1);
  double term = 1.0 / n;
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= (n + i - 1.0) * 4.0 * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = n * acc;
  }
  cplx sum{};
  for (int k = 0; k < n; ++k) {
    const double w = (d[k] - d[n]) / d[n];
    const cplx p = std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum += (k % 2 == 0 ? w : -w) * p;
  }
  return -sum;
}

int borwein_terms(double t) {
  const int n = static_cast<int>(std::ceil((0.5 * kPi * std::abs(t) + 38.0) / 1.7627471740390860));
  return std::clamp(n, 20, 390);
}

// Euler-Maclaurin fallback for points where 1 - 2^{1-s} nearly vanishes.
cplx zeta_euler_maclaurin(cplx s) {
  static constexpr std::array<double, 8> b2k_over_fact = {
      1.0 / 6.0 / 2.0,           -1.0 / 30.0 / 24.0,       1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,     5.0 / 66.0 / 3628800.0,   -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0, -3617.0 / 510.0 / 20922789888000.0};
  const int n_terms = 20 + static_cast<int>(std::abs(s.imag()));
  const double big_n = n_terms;
  cplx sum{};
  for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const cplx n_pow = std::exp(-s * std::log(big_n));
  sum += big_n * n_pow / (s - 1.0) + 0.5 * n_pow;
  cplx rising = s;                 // s (s+1) ... (s + 2k - 2)
  cplx power = n_pow / big_n;      // N^{-s-2k+1}
  for (std::size_t k = 0; k < b2k_over_fact.size(); ++k) {
    sum += b2k_over_fact[k] * rising * power;
    rising *= (s + (2.0 * k + 1.0)) * (s + (2.0 * k + 2.0));
    power /= big_n * big_n;
  }
  return sum;
}

}  // namespace

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at non-positive integer");
  if (s.real() < 0.5) return std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
  return log_gamma_right(s);
}

cplx gamma(cplx s) { return std::exp(log_gamma(s)); }

bool zeta_in_primary_domain(cplx s) {
  const double re = s.real() < 0.0 ? 1.0 - s.real() : s.real();
  return re < 2.0 && std::abs(s.imag()) <= 200.0;
}

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() < 0.0) {
    if (s.imag() == 0.0 && std::fmod(s.real(), 2.0) == 0.0) return 0.0;  // trivial zeros
    const cplx log_factor = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_sin_pi(0.5 * s) +
                            log_gamma(1.0 - s);
    return std::exp(log_factor) * zeta(1.0 - s);
  }
  const cplx shifted = s - 1.0;
  if (std::abs(shifted) < 1e-5) {
    constexpr double stieltjes1 = -0.0728158454836767249;
    return 1.0 / shifted + kEulerGamma - stieltjes1 * shifted;
  }
  const cplx denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
  if (std::abs(denom) < 1e-3) return zeta_euler_maclaurin(s);
  return eta_borwein(s, borwein_terms(s.imag())) / denom;
}

namespace bessel_branches {

cplx k0_series(cplx z) {
  const cplx q = 0.25 * z * z;
  cplx term = 1.0;
  cplx i0 = 1.0;
  cplx tail{};
  double harmonic = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / static_cast<double>(k * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += term * harmonic;
    if (std::abs(term) * harmonic < 1e-18 * std::abs(i0)) break;
  }
  return -(std::log(0.5 * z) + kEulerGamma) * i0 + tail;
}

cplx k0_integral(cplx z) {
  const double theta = std::abs(std::arg(z));
  const double strip = 0.5 * kPi - theta;
  if (strip <= 0.0) throw DomainError("bessel_k0: requires Re(z) > 0");
  const double step = std::min(0.07, strip * kPi / 45.0);
  const double re = z.real();
  const double t_max = std::acosh(1.0 + 45.0 / re);
  cplx sum = 0.5 * std::exp(-z);
  for (int k = 1;; ++k) {
    const double t = k * step;
    const cplx v = std::exp(-z * std::cosh(t));
    sum += v;
    if (t > t_max) break;
  }
  return step * sum;
}

cplx k0_asymptotic(cplx z) {
  cplx term = 1.0;
  cplx sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (8.0 * k * z);
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-17) break;
  }
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
}

double y0_series(double x) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double j0 = 1.0L;
  long double tail = 0.0L;
  long double harmonic = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    j0 += term;
    tail -= term * harmonic;
    if (std::fabs(term) * harmonic < 1e-21L) break;
  }
  const long double log_part = std::log(0.5L * x) + static_cast<long double>(kEulerGamma);
  return static_cast<double>(2.0L / static_cast<long double>(kPi) * (log_part * j0 + tail));
}

double y0_integral(double x) {
  using boost::math::quadrature::gauss;
  // Y0(x) = (2/pi) int_0^{pi/2} sin(x cos t) dt - (2/pi) int_0^inf exp(-x sinh t) dt
  auto osc = [x](double t) { return std::sin(x * std::cos(t)); };
  auto decay = [x](double t) { return std::exp(-x * std::sinh(t)); };
  double first = 0.0;
  constexpr int panels = 4;
  for (int p = 0; p < panels; ++p) {
    const double a = 0.5 * kPi * p / panels;
    const double b = 0.5 * kPi * (p + 1) / panels;
    first += gauss<double, 30>::integrate(osc, a, b);
  }
  const double t_max = std::asinh(45.0 / x);
  double second = 0.0;
  for (int p = 0; p < panels; ++p)
    second += gauss<double, 30>::integrate(decay, t_max * p / panels, t_max * (p + 1) / panels);
  return 2.0 / kPi * (first - second);
}

namespace {

void hankel_pq(double x, double& p, double& q) {
  // c_k = prod_{j<=k} (2j-1)^2 / (k! 8^k); P alternates over even k, Q over odd k
  p = 1.0;
  q = 0.0;
  double c = 1.0;
  double last = 1.0;
  for (int k = 1; k < 120; ++k) {
    const double odd = 2.0 * k - 1.0;
    c *= odd * odd / (8.0 * k * x);
    if (c > last) break;
    last = c;
    const int half = k / 2;
    const double sign = (half % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * c;
    else
      q -= sign * c;
    if (c < 1e-17) break;
  }
}

}  // namespace

double y0_asymptotic(double x) {
  double p = 0.0, q = 0.0;
  hankel_pq(x, p, q);
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

}  // namespace bessel_branches

cplx bessel_k0(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("bessel_k0: requires Re(z) > 0");
  const double r = std::abs(z);
  if (r <= bessel_branches::k0_series_radius) return bessel_branches::k0_series(z);
  if (r < bessel_branches::k0_asymptotic_radius) return bessel_branches::k0_integral(z);
  return bessel_branches::k0_asymptotic(z);
}

double bessel_k0(double x) { return bessel_k0(cplx(x, 0.0)).real(); }

double bessel_j0(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_j0: requires finite x > 0");
  if (x <= bessel_branches::y0_series_limit) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<long double>(k) * k);
      sum += term;
      if (std::fabs(term) < 1e-21L) break;
    }
    return static_cast<double>(sum);
  }
  if (x < bessel_branches::y0_asymptotic_limit) {
    // periodic integrand: the trapezoid rule converges geometrically
    constexpr int nodes = 96;
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) sum += std::cos(x * std::sin(kPi * k / nodes));
    return sum / nodes;
  }
  double p = 0.0, q = 0.0;
  bessel_branches::hankel_pq(x, p, q);
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_y0(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_y0: requires finite x > 0");
  if (x <= bessel_branches::y0_series_limit) return bessel_branches::y0_series(x);
  if (x < bessel_branches::y0_asymptotic_limit) return bessel_branches::y0_integral(x);
  return bessel_branches::y0_asymptotic(x);
}

}  // namespace sumlab
