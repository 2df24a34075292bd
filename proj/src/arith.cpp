#include "sumlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <memory>
#include <mutex>

namespace sumlab {

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius: n must be >= 1");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw DomainError("divisor_count: n must be >= 1");
  std::uint64_t count = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

SieveTables::SieveTables(std::uint64_t cutoff)
    : mu(cutoff + 1, 0), sigma(cutoff + 1, 0), smallest_prime(cutoff + 1, 0) {
  if (cutoff == 0) return;
  // exponent of the smallest prime factor, needed to update sigma multiplicatively
  std::vector<std::uint8_t> lead_exp(cutoff + 1, 0);
  std::vector<std::uint32_t> primes;
  mu[1] = 1;
  sigma[1] = 1;
  for (std::uint64_t i = 2; i <= cutoff; ++i) {
    if (smallest_prime[i] == 0) {
      smallest_prime[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
      sigma[i] = 2;
      lead_exp[i] = 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > smallest_prime[i] || m > cutoff) break;
      smallest_prime[m] = p;
      if (p == smallest_prime[i]) {
        mu[m] = 0;
        lead_exp[m] = static_cast<std::uint8_t>(lead_exp[i] + 1);
        sigma[m] = sigma[i] / (lead_exp[i] + 1u) * (lead_exp[i] + 2u);
      } else {
        mu[m] = -mu[i];
        lead_exp[m] = 1;
        sigma[m] = sigma[i] * 2;
      }
    }
  }
}

const SieveTables& sieve_upto(std::uint64_t cutoff) {
  static std::mutex guard;
  // tables are never released so references stay valid for the process lifetime
  static std::list<std::unique_ptr<SieveTables>> cache;
  std::lock_guard lock(guard);
  for (const auto& t : cache)
    if (t->cutoff() >= cutoff) return *t;
  const std::uint64_t size = std::max<std::uint64_t>(cutoff, 1024);
  cache.push_back(std::make_unique<SieveTables>(size));
  return *cache.back();
}

std::vector<cplx> dirichlet_convolve(std::span<const cplx> f, std::span<const cplx> g) {
  if (f.size() != g.size() || f.empty())
    throw DomainError("dirichlet_convolve: inputs must share a cutoff");
  const std::size_t n = f.size() - 1;
  std::vector<cplx> out(n + 1, cplx{});
  for (std::size_t d = 1; d <= n; ++d) {
    if (f[d] == cplx{}) continue;
    for (std::size_t k = 1; d * k <= n; ++k) out[d * k] += f[d] * g[k];
  }
  return out;
}

DivisorSet::DivisorSet(std::vector<std::uint64_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw DomainError("DivisorSet: duplicate member");
  if (!members_.empty() && members_.front() == 0)
    throw DomainError("DivisorSet: members must be >= 1");
}

DivisorSet DivisorSet::range(std::uint64_t first, std::uint64_t last) {
  if (first == 0 || last < first) throw DomainError("DivisorSet::range: invalid bounds");
  std::vector<std::uint64_t> m;
  m.reserve(last - first + 1);
  for (auto d = first; d <= last; ++d) m.push_back(d);
  return DivisorSet(std::move(m));
}

bool DivisorSet::contains(std::uint64_t d) const {
  return std::binary_search(members_.begin(), members_.end(), d);
}

DivisorSet DivisorSet::united(const DivisorSet& other) const {
  std::vector<std::uint64_t> m = members_;
  m.insert(m.end(), other.members_.begin(), other.members_.end());
  return DivisorSet(std::move(m));
}

ArithmeticSequence::ArithmeticSequence(std::vector<cplx> a, std::vector<cplx> b, std::string label)
    : cutoff_(a.size() - 1), a_(std::move(a)), b_(std::move(b)), label_(std::move(label)) {}

namespace {

std::vector<cplx> tabulate(const ArithmeticSequence::Rule& rule, std::uint64_t cutoff) {
  std::vector<cplx> v(cutoff + 1, cplx{});
  for (std::uint64_t n = 1; n <= cutoff; ++n) v[n] = rule(n);
  return v;
}

std::vector<cplx> mu_table(std::uint64_t cutoff) {
  const auto& s = sieve_upto(cutoff);
  std::vector<cplx> v(cutoff + 1, cplx{});
  for (std::uint64_t n = 1; n <= cutoff; ++n) v[n] = static_cast<double>(s.mu[n]);
  return v;
}

}  // namespace

ArithmeticSequence ArithmeticSequence::from_a(const Rule& a, std::uint64_t cutoff, std::string label) {
  if (cutoff == 0) throw DomainError("ArithmeticSequence: cutoff must be >= 1");
  auto av = tabulate(a, cutoff);
  auto bv = dirichlet_convolve(av, mu_table(cutoff));
  return ArithmeticSequence(std::move(av), std::move(bv), std::move(label));
}

ArithmeticSequence ArithmeticSequence::from_b(const Rule& b, std::uint64_t cutoff, std::string label) {
  if (cutoff == 0) throw DomainError("ArithmeticSequence: cutoff must be >= 1");
  auto bv = tabulate(b, cutoff);
  std::vector<cplx> one(cutoff + 1, cplx{1.0});
  one[0] = 0.0;
  auto av = dirichlet_convolve(bv, one);
  return ArithmeticSequence(std::move(av), std::move(bv), std::move(label));
}

cplx ArithmeticSequence::a(std::uint64_t n) const {
  if (n == 0 || n > cutoff_) throw DomainError("ArithmeticSequence::a: index outside [1..N]");
  return a_[n];
}

cplx ArithmeticSequence::b(std::uint64_t n) const {
  if (n == 0 || n > cutoff_) throw DomainError("ArithmeticSequence::b: index outside [1..N]");
  return b_[n];
}

std::uint64_t ArithmeticSequence::a_support_max() const {
  for (auto n = cutoff_; n >= 1; --n)
    if (a_[n] != cplx{}) return n;
  return 0;
}

std::uint64_t ArithmeticSequence::b_support_max() const {
  for (auto n = cutoff_; n >= 1; --n)
    if (b_[n] != cplx{}) return n;
  return 0;
}

ArithmeticSequence invert(const ArithmeticSequence::Rule& a, std::uint64_t cutoff, std::string label) {
  return ArithmeticSequence::from_a(a, cutoff, std::move(label));
}

std::vector<cplx> compose_c(const ArithmeticSequence& seq) {
  const auto n = seq.cutoff();
  const auto& s = sieve_upto(n);
  std::vector<cplx> sigma(n + 1, cplx{});
  for (std::uint64_t k = 1; k <= n; ++k) sigma[k] = static_cast<double>(s.sigma[k]);
  return dirichlet_convolve(seq.b_values(), sigma);
}

cplx restricted_sum(std::span<const cplx> values, std::uint64_t n, const DivisorSet& set) {
  if (n == 0) throw DomainError("restricted_sum: n must be >= 1");
  if (values.size() < n + 1) throw DomainError("restricted_sum: n exceeds the sequence cutoff");
  cplx total{};
  for (std::uint64_t d : set.members()) {
    if (d > n) break;
    if (n % d == 0) total += values[d];
  }
  return total;
}

double frac(double x) {
  if (!std::isfinite(x)) throw DomainError("frac: non-finite input");
  return x - std::trunc(x);
}

namespace sequences {

ArithmeticSequence identity_e(std::uint64_t cutoff) {
  return ArithmeticSequence::from_a([](std::uint64_t n) { return cplx(n == 1 ? 1.0 : 0.0); }, cutoff, "e");
}

ArithmeticSequence ones(std::uint64_t cutoff) {
  return ArithmeticSequence::from_a([](std::uint64_t) { return cplx(1.0); }, cutoff, "one");
}

ArithmeticSequence divisor_count(std::uint64_t cutoff) {
  const auto& s = sieve_upto(cutoff);
  return ArithmeticSequence::from_a(
      [&s](std::uint64_t n) { return cplx(static_cast<double>(s.sigma[n])); }, cutoff, "sigma");
}

ArithmeticSequence zero(std::uint64_t cutoff) {
  return ArithmeticSequence::from_a([](std::uint64_t) { return cplx{}; }, cutoff, "zero");
}

ArithmeticSequence by_name(const std::string& name, std::uint64_t cutoff) {
  if (name == "e") return identity_e(cutoff);
  if (name == "one") return ones(cutoff);
  if (name == "sigma") return divisor_count(cutoff);
  if (name == "zero") return zero(cutoff);
  if (name == "id")
    return ArithmeticSequence::from_a([](std::uint64_t n) { return cplx(static_cast<double>(n)); }, cutoff, "id");
  if (name == "mu") {
    // b = mu means a = e; kept as an alias for the Davenport convention
    auto s = identity_e(cutoff);
    return s;
  }
  throw DomainError("unknown arithmetic sequence '" + name + "'");
}

}  // namespace sequences

}  // namespace sumlab
