#include "fermat5/modarith.hpp"

#include <cassert>

#include "fermat5/errors.hpp"

namespace fermat5 {

namespace fp64 {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1;
  a %= q;
  while (e > 0) {
    if (e & 1) r = mul(r, a, q);
    a = mul(a, a, q);
    e >>= 1;
  }
  return r;
}

int legendre(std::uint64_t a, std::uint64_t q) {
  a %= q;
  if (a == 0) return 0;
  std::uint64_t t = pow(a, (q - 1) / 2, q);
  return t == 1 ? 1 : -1;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> sqrt(std::uint64_t a,
                                                            std::uint64_t q) {
  a %= q;
  if (a == 0) throw ArgumentError("fp64::sqrt: zero input");
  if (legendre(a, q) != 1) return std::nullopt;
  std::uint64_t r;
  if (q % 4 == 3) {
    r = pow(a, (q + 1) / 4, q);
  } else {
    // Tonelli-Shanks
    std::uint64_t s = 0, t = q - 1;
    while ((t & 1) == 0) {
      t >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (legendre(z, q) != -1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = pow(z, t, q);
    std::uint64_t x = pow(a, t, q);
    r = pow(a, (t + 1) / 2, q);
    while (x != 1) {
      std::uint64_t i = 0, e = x;
      while (e != 1) {
        e = mul(e, e, q);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b, q);
      m = i;
      c = mul(b, b, q);
      x = mul(x, c, q);
      r = mul(r, b, q);
    }
  }
  std::uint64_t r2 = q - r;
  if (r > r2) std::swap(r, r2);
  return std::make_pair(r, r2);
}

std::uint64_t primitive_root(std::uint64_t q,
                             const std::vector<std::uint64_t>& qm1_primes) {
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (std::uint64_t ell : qm1_primes) {
      if (pow(g, (q - 1) / ell, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ArgumentError("primitive_root: no generator found (bad factorization?)");
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t q) {
  return pow(a % q, q - 2, q);
}

}  // namespace fp64

namespace fpz {

Zint pow(const Zint& a, const Zint& e, const Zint& q) {
  if (e < 0) throw ArgumentError("fpz::pow: negative exponent");
  Zint r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
  return r;
}

int legendre(const Zint& a, const Zint& q) {
  Zint t = mod_nonneg(a, q);
  if (t == 0) return 0;
  Zint e = (q - 1) / 2;
  return pow(t, e, q) == 1 ? 1 : -1;
}

std::optional<std::pair<Zint, Zint>> sqrt(const Zint& a, const Zint& q) {
  Zint v = mod_nonneg(a, q);
  if (v == 0) throw ArgumentError("fpz::sqrt: zero input");
  if (legendre(v, q) != 1) return std::nullopt;
  Zint r;
  if (mod_u64(q, 4) == 3) {
    r = pow(v, (q + 1) / 4, q);
  } else {
    Zint t = q - 1;
    unsigned long s = v2(t);
    t >>= s;
    Zint z = 2;
    while (legendre(z, q) != -1) ++z;
    unsigned long m = s;
    Zint c = pow(z, t, q);
    Zint x = pow(v, t, q);
    r = pow(v, (t + 1) / 2, q);
    while (x != 1) {
      unsigned long i = 0;
      Zint e = x;
      while (e != 1) {
        e = mod_nonneg(e * e, q);
        ++i;
      }
      Zint b = c;
      for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod_nonneg(b * b, q);
      m = i;
      c = mod_nonneg(b * b, q);
      x = mod_nonneg(x * c, q);
      r = mod_nonneg(r * b, q);
    }
  }
  Zint r2 = q - r;
  if (r > r2) std::swap(r, r2);
  return std::make_pair(r, r2);
}

Zint primitive_root(const Zint& q, const std::vector<Zint>& qm1_primes) {
  Zint qm1 = q - 1;
  for (Zint g = 2; g < q; ++g) {
    bool ok = true;
    for (const Zint& ell : qm1_primes) {
      if (pow(g, divexact(qm1, ell), q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ArgumentError("primitive_root: no generator found (bad factorization?)");
}

}  // namespace fpz

PrimeModulus::PrimeModulus(Zint q) : q_(std::move(q)) {
  if (q_ < 3 || mpz_even_p(q_.get_mpz_t()))
    throw ArgumentError("PrimeModulus: modulus must be an odd prime >= 3");
  primality_ = classify_prime(q_);
  if (primality_ == Primality::composite)
    throw ArgumentError("PrimeModulus: modulus is composite");
  if (fits_u64(q_) && mpz_sizeinbase(q_.get_mpz_t(), 2) <= 63) {
    word_ = true;
    wq_ = to_u64(q_);
  }
}

Residue::Residue(Zint value, PrimeModulus m) : v_(std::move(value)), m_(std::move(m)) {
  v_ = mod_nonneg(v_, m_.value());
}

Residue pow_mod(const Residue& base, const Zint& exp) {
  if (exp < 0) throw ArgumentError("pow_mod: negative exponent");
  const PrimeModulus& m = base.modulus();
  if (m.word() && fits_u64(exp)) {
    std::uint64_t r = fp64::pow(to_u64(base.value()), to_u64(exp), m.word_value());
    return Residue(zint_of(r), m);
  }
  return Residue(fpz::pow(base.value(), exp, m.value()), m);
}

std::optional<std::pair<Residue, Residue>> sqrt_mod(const Residue& a) {
  const PrimeModulus& m = a.modulus();
  if (m.word()) {
    auto r = fp64::sqrt(to_u64(a.value()), m.word_value());
    if (!r) return std::nullopt;
    return std::make_pair(Residue(zint_of(r->first), m), Residue(zint_of(r->second), m));
  }
  auto r = fpz::sqrt(a.value(), m.value());
  if (!r) return std::nullopt;
  return std::make_pair(Residue(r->first, m), Residue(r->second, m));
}

namespace {

void check_qm1_factorization(const PrimeModulus& q, const Factorization& qm1) {
  if (!qm1.complete) throw ArgumentError("primitive_root: incomplete factorization");
  if (qm1.sign < 0 || qm1.recompose() != q.value() - 1)
    throw ArgumentError("primitive_root: factorization does not recompose to q-1");
}

}  // namespace

Residue primitive_root(const PrimeModulus& q, const Factorization& qm1) {
  check_qm1_factorization(q, qm1);
  if (q.word()) {
    std::vector<std::uint64_t> primes;
    for (const auto& [p, e] : qm1.factors) primes.push_back(to_u64(p));
    return Residue(zint_of(fp64::primitive_root(q.word_value(), primes)), q);
  }
  std::vector<Zint> primes;
  for (const auto& [p, e] : qm1.factors) primes.push_back(p);
  return Residue(fpz::primitive_root(q.value(), primes), q);
}

RootsOfUnity::RootsOfUnity(const PrimeModulus& q, std::uint64_t n,
                           const Factorization& qm1)
    : q_(q.value()), n_(n) {
  if (n == 0) throw ArgumentError("nth_roots_of_unity: n must be positive");
  if (!divides(zint_of(n), q.value() - 1))
    throw ArgumentError("nth_roots_of_unity: n does not divide q-1");
  Residue g = primitive_root(q, qm1);
  h_ = fpz::pow(g.value(), divexact(q.value() - 1, zint_of(n)), q.value());
}

std::vector<Zint> nth_roots_of_unity(const PrimeModulus& q, std::uint64_t n,
                                     const Factorization& qm1) {
  RootsOfUnity roots(q, n, qm1);
  std::vector<Zint> out;
  out.reserve(n);
  for (const Zint& r : roots) out.push_back(r);
  return out;
}

}  // namespace fermat5
