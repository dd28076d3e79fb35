#pragma once

#include <vector>

#include "fermat5/zint.hpp"

namespace fermat5 {

// Dense polynomial over Z; coeffs[i] is the coefficient of X^i.
// Normal form: no trailing zeros; the zero polynomial is the empty vector.
using Poly = std::vector<Zint>;

int poly_degree(const Poly& p);  // -1 for the zero polynomial
void poly_trim(Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Zint& c);
Zint poly_content(const Poly& a);  // gcd of coefficients, >= 0; 0 for zero poly

// Exact quotient a / b; throws ArgumentError unless b divides a in Z[X].
Poly poly_divexact(const Poly& a, const Poly& b);

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r. Returns r.
Poly poly_prem(const Poly& a, const Poly& b);

// X^n - 1 and (X+1)^n - 1.
Poly xn_minus_1(unsigned n);
Poly x_plus_1_pow_n_minus_1(unsigned n);

// Substitute X -> X+1.
Poly poly_shift_by_1(const Poly& a);

// Res(a, b) with the operand order preserved, computed by the subresultant
// pseudo-remainder sequence. Exact over Z, including sign.
Zint resultant(Poly a, Poly b);

}  // namespace fermat5
