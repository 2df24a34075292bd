#pragma once

// Quadrature building blocks: adaptive Gauss-Kronrod on finite or infinite
// intervals, and a half-period panel integrator for oscillatory tails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <limits>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sumlab {

struct QuadOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 15;
  std::size_t max_panels = 20000;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
  bool accelerated = false;
};

/// Neumaier-compensated accumulator; keeps long sums independent of
/// evaluation order up to reassociation noise.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    const T t = sum_ + v;
    if (magnitude(sum_) >= magnitude(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(T v) {
    add(v);
    return *this;
  }
  T value() const { return sum_ + carry_; }

 private:
  static double magnitude(double v) { return std::abs(v); }
  static double magnitude(std::complex<double> v) { return std::abs(v.real()) + std::abs(v.imag()); }
  T sum_{};
  T carry_{};
};

inline double magnitude_of(double v) { return std::abs(v); }
inline double magnitude_of(std::complex<double> v) { return std::abs(v); }

namespace detail {

/// One 31-point Gauss-Kronrod pass on [a, b]: value, |K - G| error and L1.
/// The node tables come from Boost; the recursive driver there (1.74)
/// compares an unscaled error against a scaled tolerance, so short intervals
/// never terminate, and the bisection below replaces it.
template <class T, class F>
void gk31(F& f, double a, double b, T& value, double& error, double& l1) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using gauss = boost::math::quadrature::gauss<double, 15>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(mid);
  T k = fc * wk[0];
  T g = fc * wg[0];
  double l = magnitude_of(fc) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const T fp = f(mid + half * x[i]);
    const T fm = f(mid - half * x[i]);
    k += (fp + fm) * wk[i];
    l += (magnitude_of(fp) + magnitude_of(fm)) * wk[i];
    if (i % 2 == 0) g += (fp + fm) * wg[i / 2];
  }
  value = k * half;
  l1 = l * std::abs(half);
  error = std::max(magnitude_of(k - g), 2.0 * std::numeric_limits<double>::epsilon() * magnitude_of(k)) *
          std::abs(half);
}

template <class T, class F>
QuadResult<T> adaptive_gk31(F& f, double a, double b, const QuadOptions& opt) {
  struct Segment {
    double a, b;
    T value;
    double error, l1;
    unsigned depth;
  };
  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  auto push = [&](double lo, double hi, unsigned depth) {
    Segment s{lo, hi, T{}, 0.0, 0.0, depth};
    gk31<T>(f, lo, hi, s.value, s.error, s.l1);
    heap.push_back(s);
    std::push_heap(heap.begin(), heap.end(), worse);
  };
  push(a, b, 0);
  const std::size_t max_segments = std::size_t{64} * std::max(opt.max_depth, 1u);
  QuadResult<T> r;
  for (;;) {
    CompensatedSum<T> value;
    double error = 0.0, l1 = 0.0;
    for (const auto& s : heap) {
      value += s.value;
      error += s.error;
      l1 += s.l1;
    }
    r.value = value.value();
    r.error = error;
    r.panels = heap.size();
    const double target = std::max({opt.rel_tol * magnitude_of(r.value), 1e-2 * opt.rel_tol * l1, 1e-300});
    r.converged = error <= std::max(1e3 * opt.rel_tol * l1, 1e-300);
    if (error <= target || heap.size() >= max_segments) return r;
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.depth >= 60 || !(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      // cannot be split further; keep it and stop
      std::push_heap(heap.begin(), heap.end(), worse);
      return r;
    }
    heap.pop_back();
    push(worst.a, mid, worst.depth + 1);
    push(mid, worst.b, worst.depth + 1);
  }
}

}  // namespace detail

/// Globally adaptive 31-point Gauss-Kronrod; either limit may be infinite.
/// Infinite limits are mapped to [0, 1) by x = a + t/(1 - t).
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a == b) return QuadResult<T>{};
  if (a > b) {
    auto r = integrate(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  if (a == -inf && b == inf) {
    auto left = integrate(f, -inf, 0.0, opt);
    auto right = integrate(f, 0.0, inf, opt);
    left.value += right.value;
    left.error += right.error;
    left.panels += right.panels;
    left.converged = left.converged && right.converged;
    return left;
  }
  if (b == inf) {
    auto g = [&](double t) -> T {
      const double u = 1.0 - t;
      const double x = a + t / u;
      if (!std::isfinite(x)) return T{};
      return f(x) / (u * u);
    };
    return detail::adaptive_gk31<T>(g, 0.0, 1.0, opt);
  }
  if (a == -inf) {
    auto g = [&](double t) -> T {
      const double u = 1.0 - t;
      const double x = b - t / u;
      if (!std::isfinite(x)) return T{};
      return f(x) / (u * u);
    };
    return detail::adaptive_gk31<T>(g, 0.0, 1.0, opt);
  }
  return detail::adaptive_gk31<T>(f, a, b, opt);
}

/// Sum of the panel integrals of g over [start + k L, start + (k+1) L],
/// k = 0, 1, ... The partial sums at the panel ends are accelerated by
/// repeated averaging, which removes the alternating remainder left when the
/// panel ends sit at zeros of an oscillating factor.
template <class F>
QuadResult<double> panel_integrate(F&& g, double start, double length, const QuadOptions& opt = {}) {
  constexpr std::size_t kLevels = 16;
  constexpr int kQuiet = 3;
  QuadOptions local = opt;
  local.max_depth = std::min(opt.max_depth, 10u);
  QuadResult<double> r;
  CompensatedSum<double> sum;
  std::deque<double> partial;
  double max_panel = 0.0;
  double last_estimate = std::numeric_limits<double>::quiet_NaN();
  int quiet_raw = 0;
  int quiet_acc = 0;
  r.converged = false;
  for (std::size_t k = 0; k < opt.max_panels; ++k) {
    const double a = start + static_cast<double>(k) * length;
    const double piece = integrate(g, a, a + length, local).value;
    sum += piece;
    ++r.panels;
    max_panel = std::max(max_panel, std::abs(piece));
    partial.push_back(sum.value());
    if (partial.size() > kLevels + 1) partial.pop_front();

    const double scale = std::max(std::abs(sum.value()), 1e-3 * max_panel);
    const double tol = opt.rel_tol * std::max(scale, 1e-300);
    quiet_raw = std::abs(piece) <= tol ? quiet_raw + 1 : 0;
    if (quiet_raw >= kQuiet) {
      r.value = sum.value();
      r.error = std::abs(piece);
      r.converged = true;
      return r;
    }
    if (partial.size() == kLevels + 1) {
      std::vector<double> level(partial.begin(), partial.end());
      for (std::size_t n = level.size(); n > 1; --n)
        for (std::size_t j = 0; j + 1 < n; ++j) level[j] = 0.5 * (level[j] + level[j + 1]);
      const double estimate = level[0];
      const double change = std::abs(estimate - last_estimate);
      quiet_acc = change <= tol ? quiet_acc + 1 : 0;
      last_estimate = estimate;
      if (quiet_acc >= kQuiet) {
        r.value = estimate;
        r.error = change;
        r.converged = true;
        r.accelerated = true;
        return r;
      }
    }
  }
  r.value = std::isfinite(last_estimate) ? last_estimate : sum.value();
  r.error = std::numeric_limits<double>::infinity();
  r.accelerated = std::isfinite(last_estimate);
  return r;
}

}  // namespace sumlab
