#include "fermat5/primes.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fermat5/errors.hpp"

namespace fermat5 {

namespace {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// a is a Miller-Rabin witness for composite m (m odd, m-1 = d*2^s).
bool mr_witness_u64(std::uint64_t a, std::uint64_t d, unsigned s, std::uint64_t m) {
  std::uint64_t x = pow_mod(a, d, m);
  if (x == 1 || x == m - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, m);
    if (x == m - 1) return false;
  }
  return true;
}

// Proven sufficient for every m < 3.3e24, hence for the whole 64-bit range.
constexpr std::uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool mr_witness_z(const Zint& a, const Zint& d, unsigned long s, const Zint& m) {
  Zint x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  Zint m1 = m - 1;
  if (x == 1 || x == m1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = mod_nonneg(x * x, m);
    if (x == m1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  unsigned s = 0;
  std::uint64_t d = m - 1;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kMrBases) {
    if (mr_witness_u64(a, d, s, m)) return false;
  }
  return true;
}

Primality classify_prime(const Zint& m) {
  if (fits_u64(m)) {
    return is_prime_u64(to_u64(m)) ? Primality::prime : Primality::composite;
  }
  if (mpz_sgn(m.get_mpz_t()) <= 0) return Primality::composite;
  if (mpz_even_p(m.get_mpz_t())) return Primality::composite;
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                          29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull,
                          61ull, 67ull, 71ull, 73ull, 79ull, 83ull, 89ull, 97ull}) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return Primality::composite;
  }

  Zint d = m - 1;
  unsigned long s = v2(d);
  d >>= s;

  // 64 pseudorandom bases, seeded from the number itself: reproducible runs,
  // error probability below 4^-64 = 2^-128.
  SplitMix64 rng(digest(m) ^ 0x7df5u);
  Zint span = m - 3;  // bases in [2, m-2]
  unsigned bit_len = static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
  for (int round = 0; round < 64; ++round) {
    Zint a = mod_nonneg(random_bits(rng, bit_len + 64), span) + 2;
    if (mr_witness_z(a, d, s, m)) return Primality::composite;
  }
  return Primality::probable_prime;
}

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> mark(limit + 1, 1);
  mark[0] = 0;
  if (limit >= 1) mark[1] = 0;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (mark[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (mark[i]) primes.push_back(i);
  return primes;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& f,
                    std::uint64_t segment) {
  if (lo > hi) throw ArgumentError("for_each_prime: lo > hi");
  if (hi <= 2) return;
  if (segment == 0) throw ArgumentError("for_each_prime: zero segment");
  auto base = simple_sieve(isqrt_u64(hi - 1));

  std::uint64_t start = std::max<std::uint64_t>(lo, 2);
  std::vector<std::uint8_t> is_p;
  for (std::uint64_t seg_lo = start; seg_lo < hi; ) {
    std::uint64_t seg_hi = seg_lo + std::min<std::uint64_t>(segment, hi - seg_lo);
    is_p.assign(seg_hi - seg_lo, 1);
    for (std::uint64_t p : base) {
      if (p * p >= seg_hi) break;
      std::uint64_t first = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      for (std::uint64_t j = first; j < seg_hi; j += p) is_p[j - seg_lo] = 0;
    }
    for (std::uint64_t i = 0; i < seg_hi - seg_lo; ++i)
      if (is_p[i]) f(seg_lo + i);
    seg_lo = seg_hi;
  }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t segment) {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); }, segment);
  return out;
}

Zint Factorization::recompose() const {
  Zint r = unfactored;
  for (const auto& [p, e] : factors) r *= pow_u(p, e);
  return sign < 0 ? Zint(-r) : r;
}

std::string Factorization::to_string() const {
  std::ostringstream os;
  if (sign < 0) os << "-";
  if (factors.empty() && unfactored == 1) {
    os << "1";
    return os.str();
  }
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) os << " * ";
    first = false;
    os << p.get_str();
    if (e > 1) os << "^" << e;
  }
  if (unfactored != 1) {
    if (!first) os << " * ";
    os << unfactored.get_str() << "?";
  }
  return os.str();
}

namespace {

// Brent's cycle variant of Pollard rho; returns a nontrivial factor or 0.
std::uint64_t brent_rho_u64(std::uint64_t n, std::uint64_t c, std::uint64_t iters) {
  if (n % 2 == 0) return 2;
  std::uint64_t x = 2, y = 2, d = 1, q = 1, xs = 0;
  std::uint64_t count = 0;
  for (std::uint64_t r = 1; d == 1 && count < iters; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r && count < iters; ++i) {
      y = (mul_mod(y, y, n) + c) % n;
      ++count;
    }
    for (std::uint64_t k = 0; k < r && d == 1 && count < iters; k += 128) {
      xs = y;
      std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = (mul_mod(y, y, n) + c) % n;
        q = mul_mod(q, x > y ? x - y : y - x, n);
        ++count;
      }
      d = std::gcd(q, n);
    }
  }
  if (d == n) {
    // backtrack one step at a time
    d = 1;
    for (std::uint64_t guard = 0; d == 1 && guard < iters; ++guard) {
      xs = (mul_mod(xs, xs, n) + c) % n;
      std::uint64_t diff = x > xs ? x - xs : xs - x;
      if (diff == 0) return 0;
      d = std::gcd(diff, n);
    }
  }
  return (d > 1 && d < n) ? d : 0;
}

Zint brent_rho_z(const Zint& n, unsigned long c, std::uint64_t iters) {
  Zint x = 2, y = 2, d = 1, q = 1, xs = 0, diff;
  std::uint64_t count = 0;
  for (std::uint64_t r = 1; d == 1 && count < iters; r <<= 1) {
    x = y;
    for (std::uint64_t i = 0; i < r && count < iters; ++i) {
      y = mod_nonneg(y * y + c, n);
      ++count;
    }
    for (std::uint64_t k = 0; k < r && d == 1 && count < iters; k += 64) {
      xs = y;
      std::uint64_t lim = std::min<std::uint64_t>(64, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = mod_nonneg(y * y + c, n);
        diff = x > y ? x - y : y - x;
        if (diff == 0) diff = 1;
        q = mod_nonneg(q * diff, n);
        ++count;
      }
      mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
  }
  if (d == n) {
    d = 1;
    for (std::uint64_t guard = 0; d == 1 && guard < iters; ++guard) {
      xs = mod_nonneg(xs * xs + c, n);
      diff = x > xs ? x - xs : xs - x;
      if (diff == 0) return 0;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
  }
  return (d > 1 && d < n) ? d : Zint(0);
}

void factor_rec(Zint n, const FactorizeBudget& budget,
                std::vector<Zint>& primes, Zint& unfactored) {
  if (n == 1) return;
  Primality pr = classify_prime(n);
  if (pr != Primality::composite) {
    primes.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Zint r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_rec(r, budget, primes, unfactored);
    factor_rec(r, budget, primes, unfactored);
    return;
  }
  Zint d = 0;
  if (fits_u64(n)) {
    std::uint64_t m = to_u64(n);
    for (unsigned c = 1; c <= budget.rho_rounds && d == 0; ++c) {
      std::uint64_t f = brent_rho_u64(m, c, budget.rho_iters);
      if (f != 0) d = zint_of(f);
    }
  } else {
    for (unsigned c = 1; c <= budget.rho_rounds && d == 0; ++c) {
      d = brent_rho_z(n, c, budget.rho_iters);
    }
  }
  if (d == 0) {
    unfactored *= n;
    return;
  }
  factor_rec(d, budget, primes, unfactored);
  factor_rec(divexact(n, d), budget, primes, unfactored);
}

}  // namespace

Factorization factorize(const Zint& m, const FactorizeBudget& budget) {
  if (m == 0) throw ArgumentError("factorize: zero input");
  Factorization out;
  Zint n = m;
  if (n < 0) {
    out.sign = -1;
    n = -n;
  }

  std::vector<Zint> primes;
  // Trial division first; strips everything the sweep-scale callers need.
  for_each_prime(2, budget.trial_limit, [&](std::uint64_t p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.push_back(zint_of(p));
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  });
  factor_rec(n, budget, primes, out.unfactored);

  std::sort(primes.begin(), primes.end());
  for (const Zint& p : primes) {
    if (!out.factors.empty() && out.factors.back().first == p) {
      out.factors.back().second += 1;
    } else {
      out.factors.emplace_back(p, 1);
    }
  }
  out.complete = (out.unfactored == 1);

  // Recomposition is cheap next to factoring; keep the check always on.
  if (out.recompose() != m) throw Error("factorize: recomposition mismatch");
  return out;
}

}  // namespace fermat5
