#include "fermat5/wendt.hpp"

#include <map>
#include <mutex>

#include "fermat5/errors.hpp"
#include "fermat5/poly.hpp"

namespace fermat5 {

WendtValue wendt_exact(unsigned n, unsigned bound) {
  if (n == 0) throw ArgumentError("wendt_exact: n must be positive");
  if (n > bound) throw BoundError("wendt_exact: n exceeds the exact-computation bound");

  static std::mutex mu;
  static std::map<unsigned, Zint> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return {n, it->second};
  }
  Zint w = resultant(xn_minus_1(n), x_plus_1_pow_n_minus_1(n));
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, w);
  }
  return {n, w};
}

namespace {

bool divides_wendt_u64(std::uint64_t q, std::uint64_t n,
                       const std::vector<std::uint64_t>& qm1_primes) {
  std::uint64_t g = fp64::primitive_root(q, qm1_primes);
  std::uint64_t h = fp64::pow(g, (q - 1) / n, q);
  std::uint64_t alpha = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (fp64::pow((alpha + 1) % q, n, q) == 1) return true;
    alpha = fp64::mul(alpha, h, q);
  }
  return false;
}

bool divides_wendt_z(const Zint& q, std::uint64_t n, const std::vector<Zint>& qm1_primes) {
  Zint g = fpz::primitive_root(q, qm1_primes);
  Zint h = fpz::pow(g, divexact(q - 1, zint_of(n)), q);
  Zint alpha = 1;
  Zint zn = zint_of(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (fpz::pow(alpha + 1, zn, q) == 1) return true;
    alpha = mod_nonneg(alpha * h, q);
  }
  return false;
}

}  // namespace

bool divides_wendt(const PrimeModulus& q, std::uint64_t n, const Factorization* qm1) {
  if (n == 0) throw ArgumentError("divides_wendt: n must be positive");
  if (n % 6 == 0) return true;  // W_n = 0, divisible by everything
  if (!divides(zint_of(n), q.value() - 1))
    throw ArgumentError("divides_wendt: n does not divide q-1");

  Factorization local;
  if (qm1 == nullptr) {
    local = factorize(q.value() - 1);
    qm1 = &local;
  }
  if (!qm1->complete) throw IncompleteFactorization("divides_wendt: q-1 not fully factored");
  if (qm1->sign < 0 || qm1->recompose() != q.value() - 1)
    throw ArgumentError("divides_wendt: factorization does not recompose to q-1");

  if (q.word()) {
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : qm1->factors) {
      if (!fits_u64(p)) throw ArgumentError("divides_wendt: inconsistent factorization");
      primes.push_back(to_u64(p));
    }
    return divides_wendt_u64(q.word_value(), n, primes);
  }
  std::vector<Zint> primes;
  for (const auto& [p, e] : qm1->factors) primes.push_back(p);
  return divides_wendt_z(q.value(), n, primes);
}

}  // namespace fermat5
