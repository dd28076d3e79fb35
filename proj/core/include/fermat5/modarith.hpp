#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fermat5/primes.hpp"
#include "fermat5/zint.hpp"

namespace fermat5 {

// Word-sized kernels, modulus an odd prime below 2^63. All intermediate
// products go through 128-bit arithmetic.
namespace fp64 {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t q);

// Legendre symbol via Euler's criterion: -1, 0, +1.
int legendre(std::uint64_t a, std::uint64_t q);

// Square root of a (1 <= a < q) by Tonelli-Shanks; smaller root first.
std::optional<std::pair<std::uint64_t, std::uint64_t>> sqrt(std::uint64_t a,
                                                            std::uint64_t q);

// Smallest g (>= 2) of multiplicative order exactly q-1, given the prime
// factors of q-1. Deterministic.
std::uint64_t primitive_root(std::uint64_t q, const std::vector<std::uint64_t>& qm1_primes);

std::uint64_t inverse(std::uint64_t a, std::uint64_t q);

}  // namespace fp64

// Arbitrary-precision kernels; same contracts as fp64.
namespace fpz {

Zint pow(const Zint& a, const Zint& e, const Zint& q);
int legendre(const Zint& a, const Zint& q);
std::optional<std::pair<Zint, Zint>> sqrt(const Zint& a, const Zint& q);
Zint primitive_root(const Zint& q, const std::vector<Zint>& qm1_primes);

}  // namespace fpz

// An odd prime modulus. Primality is checked on construction; the result of
// that check (deterministic vs probable) is recorded for certificate use.
class PrimeModulus {
 public:
  explicit PrimeModulus(Zint q);

  const Zint& value() const { return q_; }
  bool word() const { return word_; }
  std::uint64_t word_value() const { return wq_; }
  Primality primality() const { return primality_; }

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) {
    return a.q_ == b.q_;
  }

 private:
  Zint q_;
  std::uint64_t wq_ = 0;
  bool word_ = false;
  Primality primality_ = Primality::composite;
};

// A value in [0, q).
class Residue {
 public:
  Residue(Zint value, PrimeModulus m);

  const Zint& value() const { return v_; }
  const PrimeModulus& modulus() const { return m_; }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.v_ == b.v_ && a.m_ == b.m_;
  }

 private:
  Zint v_;
  PrimeModulus m_;
};

// base^exp mod q in O(log exp) multiplications; exp >= 0.
Residue pow_mod(const Residue& base, const Zint& exp);

// {r, q-r} with r^2 = a and r <= q-r, or absent for a non-residue.
// Requires a != 0.
std::optional<std::pair<Residue, Residue>> sqrt_mod(const Residue& a);

// Verifies the supplied factorization against q-1 (throws ArgumentError on
// mismatch), then searches candidates 2, 3, 4, ... deterministically.
Residue primitive_root(const PrimeModulus& q, const Factorization& qm1);

// Streaming enumeration of the n-th roots of unity mod q (requires n | q-1):
// powers of g^((q-1)/n) starting at 1. Single-pass input range.
class RootsOfUnity {
 public:
  RootsOfUnity(const PrimeModulus& q, std::uint64_t n, const Factorization& qm1);

  std::uint64_t count() const { return n_; }
  const Zint& generator() const { return h_; }

  class iterator {
   public:
    using value_type = Zint;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const RootsOfUnity* r, std::uint64_t i) : r_(r), i_(i), cur_(1) {}
    const Zint& operator*() const { return cur_; }
    iterator& operator++() {
      cur_ = mod_nonneg(cur_ * r_->h_, r_->q_);
      ++i_;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.i_ == b.i_;
    }

   private:
    const RootsOfUnity* r_ = nullptr;
    std::uint64_t i_ = 0;
    Zint cur_ = 1;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(nullptr, n_); }

 private:
  Zint q_;
  std::uint64_t n_;
  Zint h_;
};

// Eager version of the above.
std::vector<Zint> nth_roots_of_unity(const PrimeModulus& q, std::uint64_t n,
                                     const Factorization& qm1);

}  // namespace fermat5
