#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fermat5/curve.hpp"
#include "fermat5/primes.hpp"
#include "fermat5/zint.hpp"

namespace fermat5 {

// For an odd prime exponent p >= 5, the Fermat equation x^p + y^p + z^p = 0
// has no nontrivial solution over Q(sqrt5) as soon as some integer n with
//   n = 2 mod 4,  n < p - 2
// makes q = np + 1 a prime, congruent to +-1 mod 5, not dividing the
// Wendt resultant W_n. Two shortcuts (n = 2 when p = 4 mod 5 and 2p+1 is
// prime; n = 10 when 10p+1 is prime) and an eight-entry exceptional table
// (fixed n with a trace condition on the conductor-(8) curve instead of the
// n = 2 mod 4 constraint) cover the remaining small exponents.

enum class Method { theorem, corollary2a, corollary2b, exceptional };
enum class PrimalityMode { deterministic, probable };

const char* to_string(Method m);
const char* to_string(PrimalityMode m);
std::optional<Method> method_from_string(const std::string& s);
std::optional<PrimalityMode> primality_mode_from_string(const std::string& s);

// One verified exponent. All conditions are re-checkable from the record.
struct WitnessCertificate {
  Zint p;
  std::uint64_t n = 0;
  Zint q;  // n*p + 1
  Method method = Method::theorem;
  PrimalityMode primality_mode = PrimalityMode::deterministic;
};

// The eight exponents whose witnesses have n = 0 mod 4 and need the curve.
using ExceptionalTable = std::array<std::pair<std::uint64_t, std::uint64_t>, 8>;
const ExceptionalTable& exceptional_table();
std::optional<std::uint64_t> exceptional_n(const Zint& p);

struct ConditionCheck {
  bool ok = false;
  PrimalityMode mode = PrimalityMode::deterministic;
  std::string fail_reason;
};

// The five witness conditions for a given (p, n); no minimality claim.
ConditionCheck theorem_conditions(const Zint& p, std::uint64_t n);

// Smallest admissible n, or absent if the search space is exhausted.
// n_max (inclusive) caps the search; default is the largest legal n, p - 3.
// If mode_out is set, it reports whether any primality decision on the
// successful path was merely probable.
std::optional<std::uint64_t> theorem_witness(const Zint& p,
                                             std::optional<std::uint64_t> n_max = {},
                                             PrimalityMode* mode_out = nullptr);

// corollary2a: p = 4 mod 5 and 2p+1 prime (witness n = 2, W_2 = -3).
// corollary2b: 10p+1 prime (witness n = 10; 10p+1 never divides
//              W_10 = -3 * 11^9 * 31^3 since 10p+1 = 1 mod 10 and > 31).
std::optional<Method> corollary2_check(const Zint& p,
                                       PrimalityMode* mode_out = nullptr);

struct ExceptionalEvidence {
  bool ok = false;
  std::uint64_t q = 0;
  std::int64_t trace_first = 0, trace_second = 0;
  bool q_prime = false;
  bool q_split = false;
  bool wendt_free = false;       // q does not divide W_n
  bool traces_excluded = false;  // both traces avoid +-2 mod p
  std::string detail;
};

// The exceptional-exponent check for an even n: q = np+1 prime, split,
// q not dividing W_n, and both Frobenius traces of E at the primes above q
// avoid +-2 mod p (which rules multiplicative reduction out for the Frey
// curve at both primes, so the common-root argument applies and contradicts
// q not dividing W_n).
ExceptionalEvidence exceptional_check(const Zint& p, std::uint64_t n,
                                      const CurveOverK& E);

// Full decision procedure: corollary2 shortcuts, then the witness search,
// then the exceptional table. The method field records which path fired.
// The curve may be null when p is not in the exceptional table.
//
// p = 3 is rejected: the exponent-3 Fermat equation has nontrivial points
// over Q(sqrt5), e.g. (9+sqrt5)^3 + (9-sqrt5)^3 = 12^3.
std::optional<WitnessCertificate> decide(const Zint& p,
                                         const CurveOverK* E = nullptr,
                                         std::optional<std::uint64_t> n_max = {});

// Re-validation of a certificate from its fields alone.
bool verify_certificate(const WitnessCertificate& cert, const CurveOverK* E,
                        std::string* why = nullptr);

}  // namespace fermat5
