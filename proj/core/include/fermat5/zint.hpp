#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "fermat5/errors.hpp"

namespace fermat5 {

// Arbitrary-precision integer, value semantics. Backed by GMP.
using Zint = mpz_class;

inline Zint zint_of(std::uint64_t v) { return Zint(static_cast<unsigned long>(v)); }

inline bool fits_u64(const Zint& x) {
  return mpz_sgn(x.get_mpz_t()) >= 0 && mpz_fits_ulong_p(x.get_mpz_t());
}

inline std::uint64_t to_u64(const Zint& x) { return mpz_get_ui(x.get_mpz_t()); }

// Nonnegative remainder, |r| in [0, m).
inline Zint mod_nonneg(const Zint& a, const Zint& m) {
  Zint r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::uint64_t mod_u64(const Zint& a, std::uint64_t m) {
  Zint r = mod_nonneg(a, zint_of(m));
  return to_u64(r);
}

// 2-adic valuation; x must be nonzero.
inline unsigned long v2(const Zint& x) {
  if (mpz_sgn(x.get_mpz_t()) == 0) throw ArgumentError("v2: zero has no valuation");
  return mpz_scan1(x.get_mpz_t(), 0);
}

inline bool divides(const Zint& d, const Zint& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Quotient n/d; throws unless d | n.
inline Zint divexact(const Zint& n, const Zint& d) {
  if (!divides(d, n)) throw ArgumentError("divexact: not divisible");
  Zint q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline Zint pow_u(const Zint& base, unsigned long e) {
  Zint r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// SplitMix64: tiny deterministic PRNG used for reproducible sampling and
// probable-prime bases. Not cryptographic.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// Random nonnegative Zint with exactly `bits` significant bits (top bit set).
inline Zint random_bits(SplitMix64& rng, unsigned bits) {
  if (bits == 0) return 0;
  Zint r = 0;
  unsigned produced = 0;
  while (produced < bits) {
    r <<= 64;
    r += zint_of(rng.next());
    produced += 64;
  }
  r >>= (produced - bits);
  mpz_setbit(r.get_mpz_t(), bits - 1);
  return r;
}

// FNV-1a over a byte string; used for config fingerprints, not security.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic 64-bit digest of a Zint (value plus sign).
inline std::uint64_t digest(const Zint& x) {
  std::string s = x.get_str(16);
  return fnv1a(s.data(), s.size());
}

}  // namespace fermat5
