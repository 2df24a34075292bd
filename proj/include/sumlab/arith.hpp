#pragma once

// Integer-indexed arithmetic functions: Möbius, divisor count, Dirichlet
// convolution and the inversion pair a = b * 1, b = a * mu.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumlab {

using cplx = std::complex<double>;

/// Raised when an argument lies outside the mathematical domain of an
/// operation (n = 0, non-finite input, cutoff violations, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

int mobius(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);

/// Möbius and divisor-count tables on [0..N] built by a linear sieve.
/// Index 0 is unused and holds 0.
struct SieveTables {
  std::vector<int> mu;
  std::vector<std::uint32_t> sigma;
  std::vector<std::uint32_t> smallest_prime;

  explicit SieveTables(std::uint64_t cutoff);
  std::uint64_t cutoff() const { return mu.size() - 1; }
};

/// Returns the tables for [1..N], reusing a process-wide sieve when it is
/// large enough. Safe to call concurrently.
const SieveTables& sieve_upto(std::uint64_t cutoff);

/// Dirichlet convolution (f * g)(n) = sum_{d|n} f(d) g(n/d) on [1..N].
/// Both inputs are 1-based (element 0 ignored) and must have size N + 1.
std::vector<cplx> dirichlet_convolve(std::span<const cplx> f, std::span<const cplx> g);

/// A finite ascending set S of positive integers.
class DivisorSet {
 public:
  DivisorSet() = default;
  explicit DivisorSet(std::vector<std::uint64_t> members);
  static DivisorSet range(std::uint64_t first, std::uint64_t last);

  bool contains(std::uint64_t d) const;
  const std::vector<std::uint64_t>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::uint64_t max() const { return members_.empty() ? 0 : members_.back(); }

  /// Disjoint-union helper used by additivity checks.
  DivisorSet united(const DivisorSet& other) const;

 private:
  std::vector<std::uint64_t> members_;
};

/// Cutoff-indexed pair (a, b) with b = a * mu, stored eagerly.
class ArithmeticSequence {
 public:
  using Rule = std::function<cplx(std::uint64_t)>;

  /// Builds the pair from a(n); b is the Möbius inverse.
  static ArithmeticSequence from_a(const Rule& a, std::uint64_t cutoff, std::string label);
  /// Builds the pair from b(n); a = b * 1.
  static ArithmeticSequence from_b(const Rule& b, std::uint64_t cutoff, std::string label);

  std::uint64_t cutoff() const { return cutoff_; }
  const std::string& label() const { return label_; }
  cplx a(std::uint64_t n) const;
  cplx b(std::uint64_t n) const;
  std::span<const cplx> a_values() const { return a_; }
  std::span<const cplx> b_values() const { return b_; }

  /// Largest n with a(n) != 0 (0 when a vanishes identically).
  std::uint64_t a_support_max() const;
  std::uint64_t b_support_max() const;

 private:
  ArithmeticSequence(std::vector<cplx> a, std::vector<cplx> b, std::string label);

  std::uint64_t cutoff_ = 0;
  std::vector<cplx> a_;
  std::vector<cplx> b_;
  std::string label_;
};

/// b = a * mu over [1..N].
ArithmeticSequence invert(const ArithmeticSequence::Rule& a, std::uint64_t cutoff,
                          std::string label = "custom");

/// c(n) = sum_{d|n} sigma(n/d) b(d), 1-based, size cutoff + 1.
std::vector<cplx> compose_c(const ArithmeticSequence& seq);

/// sum of values(d) over the divisors d of n that lie in S.
/// `values` is 1-based; every divisor of n must lie within its cutoff.
cplx restricted_sum(std::span<const cplx> values, std::uint64_t n, const DivisorSet& set);

/// x - [x] where [x] truncates toward zero. Negative x gives a value in (-1, 0].
double frac(double x);

/// Canonical sequences used throughout the verifiers.
namespace sequences {
ArithmeticSequence identity_e(std::uint64_t cutoff);   // a(n) = [n = 1]
ArithmeticSequence ones(std::uint64_t cutoff);         // a(n) = 1
ArithmeticSequence divisor_count(std::uint64_t cutoff); // a(n) = sigma(n)
ArithmeticSequence zero(std::uint64_t cutoff);
ArithmeticSequence by_name(const std::string& name, std::uint64_t cutoff);
}  // namespace sequences

}  // namespace sumlab
