#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fermat5/zint.hpp"

namespace fermat5 {

enum class Primality { composite, prime, probable_prime };

// Deterministic Miller-Rabin for the full 64-bit range (fixed base set).
bool is_prime_u64(std::uint64_t m);

// Deterministic answer for m < 2^64; above that a Miller-Rabin test with 64
// independent pseudorandom bases (error < 2^-128), reported as probable_prime.
Primality classify_prime(const Zint& m);

inline bool is_prime(const Zint& m) { return classify_prime(m) != Primality::composite; }

inline constexpr std::uint64_t kDefaultSieveSegment = 1u << 20;

// Calls f(p) for every prime p in [lo, hi), ascending. Segmented, so memory
// is O(segment + sqrt(hi)). Distinct ranges may run on distinct threads.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& f,
                    std::uint64_t segment = kDefaultSieveSegment);

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t segment = kDefaultSieveSegment);

// Complete factorization of a nonzero integer.
//
// Every entry in `factors` passes classify_prime() != composite. If a cofactor
// resists the trial-division + Brent-rho budget it is left in `unfactored`
// (and complete == false) rather than being reported as prime.
struct Factorization {
  int sign = 1;
  std::vector<std::pair<Zint, unsigned>> factors;  // ascending primes
  Zint unfactored = 1;
  bool complete = true;

  Zint recompose() const;
  // "-3 * 11^9 * 31^3" style rendering; an unfactored cofactor shows as "* C?".
  std::string to_string() const;
};

struct FactorizeBudget {
  std::uint64_t trial_limit = 100000;    // trial division bound
  unsigned rho_rounds = 24;              // distinct Brent-rho parameters to try
  std::uint64_t rho_iters = 1u << 22;    // iterations per parameter
};

// Throws ArgumentError on m == 0.
Factorization factorize(const Zint& m, const FactorizeBudget& budget = {});

}  // namespace fermat5
