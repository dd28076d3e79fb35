#pragma once

#include <cstdint>

#include "fermat5/modarith.hpp"
#include "fermat5/primes.hpp"
#include "fermat5/zint.hpp"

namespace fermat5 {

// W_n = Res(X^n - 1, (X+1)^n - 1). W_n = 0 exactly when 6 | n.
struct WendtValue {
  unsigned n;
  Zint value;
};

inline constexpr unsigned kWendtExactBound = 64;

// Exact resultant for small n (values grow like 2^(n^2)); memoized behind an
// internally synchronized cache. Throws BoundError above `bound`.
WendtValue wendt_exact(unsigned n, unsigned bound = kWendtExactBound);

// Whether q | W_n, decided in F_q: true iff some alpha with alpha^n = 1 also
// satisfies (alpha+1)^n = 1. Requires n | q-1, which makes the root test
// equivalent to divisibility. Short-circuits on the first common root; the
// exact value of W_n is never needed (and is astronomically large for the
// n used by the witness search).
//
// `qm1` may supply the factorization of q-1 (the search always knows it as
// n * p); if omitted it is factorized here.
bool divides_wendt(const PrimeModulus& q, std::uint64_t n,
                   const Factorization* qm1 = nullptr);

}  // namespace fermat5
