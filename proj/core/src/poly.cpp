#include "fermat5/poly.hpp"

#include <algorithm>

#include "fermat5/errors.hpp"

namespace fermat5 {

int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Zint(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Zint(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Zint(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

Poly poly_scale(const Poly& a, const Zint& c) {
  if (c == 0) return {};
  Poly r = a;
  for (Zint& x : r) x *= c;
  return r;
}

Zint poly_content(const Poly& a) {
  Zint g = 0;
  for (const Zint& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly poly_divexact(const Poly& a, const Poly& b) {
  if (b.empty()) throw ArgumentError("poly_divexact: division by zero");
  Poly rem = a;
  poly_trim(rem);
  if (rem.empty()) return {};
  int db = poly_degree(b);
  int dq = poly_degree(rem) - db;
  if (dq < 0) throw ArgumentError("poly_divexact: not divisible (degree)");
  Poly q(dq + 1, Zint(0));
  const Zint& lb = b.back();
  for (int k = dq; k >= 0; --k) {
    int top = db + k;
    if (poly_degree(rem) < top) continue;
    if (!divides(lb, rem[top])) throw ArgumentError("poly_divexact: not divisible");
    Zint c = divexact(rem[top], lb);
    q[k] = c;
    if (c != 0) {
      for (int i = 0; i <= db; ++i) rem[i + k] -= c * b[i];
    }
    poly_trim(rem);
  }
  if (!rem.empty()) throw ArgumentError("poly_divexact: nonzero remainder");
  poly_trim(q);
  return q;
}

Poly poly_prem(const Poly& a, const Poly& b) {
  if (b.empty()) throw ArgumentError("poly_prem: division by zero");
  Poly r = a;
  poly_trim(r);
  int db = poly_degree(b);
  const Zint& lb = b.back();
  int delta = poly_degree(r) - db;
  if (delta < 0) return r;
  for (int k = delta; k >= 0 && !r.empty(); --k) {
    int dr = poly_degree(r);
    if (dr < db + k) {
      // multiply through anyway to keep the pseudo-remainder exponent fixed
      for (Zint& c : r) c *= lb;
      continue;
    }
    Zint top = r[dr];
    for (Zint& c : r) c *= lb;
    for (int i = 0; i <= db; ++i) r[i + k] -= top * b[i];
    poly_trim(r);
  }
  return r;
}

Poly xn_minus_1(unsigned n) {
  Poly p(n + 1, Zint(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

Poly x_plus_1_pow_n_minus_1(unsigned n) {
  Poly p(n + 1, Zint(0));
  for (unsigned k = 0; k <= n; ++k) {
    mpz_bin_uiui(p[k].get_mpz_t(), n, k);
  }
  p[0] -= 1;  // binom(n,0) - 1 = 0
  poly_trim(p);
  return p;
}

Poly poly_shift_by_1(const Poly& a) {
  // Horner on X+1.
  Poly r;
  Poly x_plus_1 = {Zint(1), Zint(1)};
  for (int i = poly_degree(a); i >= 0; --i) {
    r = poly_mul(r, x_plus_1);
    if (r.empty()) r = Poly{Zint(0)};
    r[0] += a[i];
    poly_trim(r);
  }
  return r;
}

Zint resultant(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  if (a.empty() || b.empty()) return 0;
  int da = poly_degree(a), db = poly_degree(b);
  if (da == 0 && db == 0) return 1;

  Zint ca = poly_content(a), cb = poly_content(b);
  a = poly_divexact(a, Poly{ca});
  b = poly_divexact(b, Poly{cb});
  // Res(c*A, d*B) = c^deg B * d^deg A * Res(A, B)
  Zint acc = pow_u(ca, static_cast<unsigned long>(db)) *
             pow_u(cb, static_cast<unsigned long>(da));

  int sign = 1;
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) sign = -sign;
  }
  if (db == 0) {
    return acc * Zint(sign) * pow_u(b[0], static_cast<unsigned long>(da));
  }

  Zint g = 1, h = 1;
  while (poly_degree(b) > 0) {
    da = poly_degree(a);
    db = poly_degree(b);
    int delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    Poly r = poly_prem(a, b);
    a = b;
    // divide by g*h^delta (subresultant scaling keeps everything integral)
    Zint denom = g * pow_u(h, static_cast<unsigned long>(delta));
    if (!r.empty()) {
      Poly d{denom};
      r = poly_divexact(r, d);
    }
    b = r;
    g = a.back();
    if (delta > 0) {
      // h = g^delta / h^(delta-1)
      h = divexact(pow_u(g, static_cast<unsigned long>(delta)),
                   pow_u(h, static_cast<unsigned long>(delta - 1)));
    }
  }
  if (b.empty()) return 0;
  // deg b == 0: Res = s * lc(b)^deg(a) / h^(deg(a)-1)
  int dA = poly_degree(a);
  Zint num = pow_u(b[0], static_cast<unsigned long>(dA));
  Zint res = divexact(num, pow_u(h, static_cast<unsigned long>(dA - 1)));
  return acc * Zint(sign) * res;
}

}  // namespace fermat5
