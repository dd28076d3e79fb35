#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fermat5/golden.hpp"

namespace fermat5 {

// An elliptic curve over Q(sqrt5) in long Weierstrass form, coefficients in
// Z[phi]. The bundled model is the conductor-(8) curve used by the
// exceptional-exponent checks; it has good reduction at every odd prime.
struct CurveOverK {
  GoldenInt a1, a2, a3, a4, a6;
  std::string label;

  // standard derived quantities, computed exactly
  GoldenInt b2, b4, b6, b8, c4, c6, disc;

  bool validated = false;
};

// Frobenius traces at the two primes above a split rational prime q, ordered
// by the square root of 5 used for the reduction (smaller root first).
// For a curve with full rational 2-torsion each trace satisfies
// |a| <= 2 sqrt(q) and a = q + 1 mod 4.
struct TracePair {
  std::uint64_t q;
  std::int64_t first, second;

  bool same_unordered(const TracePair& o) const {
    return q == o.q &&
           ((first == o.first && second == o.second) ||
            (first == o.second && second == o.first));
  }
};

// Fill in b2..disc from a1..a6.
void compute_invariants(CurveOverK& E);

// Parse a record "a1 a2 a3 a4 a6", each coefficient "a,b" meaning a + b*phi.
// Lines starting with '#' are comments. Throws DataError on malformed input.
CurveOverK parse_curve_record(const std::string& text, std::string label);

// Checks that trace_pair(89) = (-6, -6) and that both traces are q+1 mod 4
// at the first ten good split primes. Throws DataError on failure; on
// success the curve is marked validated.
void validate_curve(CurveOverK& E);

// Read + validate. Throws IoError / DataError.
CurveOverK load_curve(const std::string& path);

// y^2 = x^3 + Ax + B over F_q.
struct ReducedCurve {
  std::uint64_t q;
  std::uint64_t A, B;
};

// Reduction of E at the prime of Z[phi] determined by phi -> (1+root)/2 where
// root^2 = 5 mod q. Requires q odd, split (q = +-1 mod 5), of good reduction.
ReducedCurve reduce_at_split_prime(const CurveOverK& E, std::uint64_t q,
                                   std::uint64_t root);

// Trace of Frobenius a = q + 1 - #E(F_q), by a full character sum over x.
// O(q) time, O(q) space for the square table. The Hasse bound a^2 <= 4q is
// asserted on the result.
std::int64_t count_points(const ReducedCurve& c);

TracePair trace_pair(const CurveOverK& E, std::uint64_t q);

}  // namespace fermat5
