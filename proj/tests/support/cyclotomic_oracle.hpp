#pragma once

// Independent route to W_n for tests: factor X^n - 1 and (X+1)^n - 1 into
// cyclotomic pieces and multiply the pairwise resultants, each computed as a
// Bareiss (fraction-free) determinant of the Sylvester matrix. Shares only
// the basic polynomial type with the library; the resultant algorithm and
// the decomposition are both different from the production path.

#include <map>
#include <vector>

#include "fermat5/poly.hpp"
#include "fermat5/zint.hpp"

namespace oracle {

using fermat5::Poly;
using fermat5::Zint;

inline const Poly& cyclotomic(unsigned d) {
  static std::map<unsigned, Poly> memo;
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  Poly num = fermat5::xn_minus_1(d);
  for (unsigned e = 1; e < d; ++e) {
    if (d % e == 0) num = fermat5::poly_divexact(num, cyclotomic(e));
  }
  return memo.emplace(d, std::move(num)).first->second;
}

// det of the Sylvester matrix of (f, g): rows of f-coefficients (descending)
// shifted deg(g) times, then rows of g likewise.
inline Zint sylvester_bareiss(const Poly& f, const Poly& g) {
  int m = fermat5::poly_degree(f), n = fermat5::poly_degree(g);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  int size = m + n;
  std::vector<std::vector<Zint>> M(size, std::vector<Zint>(size, Zint(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + i] = g[n - i];

  int sign = 1;
  Zint prev = 1;
  for (int k = 0; k + 1 < size; ++k) {
    if (M[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < size; ++r)
        if (M[r][k] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(M[k], M[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        Zint t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = fermat5::divexact(t, prev);
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign < 0 ? Zint(-M[size - 1][size - 1]) : M[size - 1][size - 1];
}

// W_n as a product of resultants of cyclotomic pairs:
//   X^n - 1 = prod_{d | n} Phi_d(X),  (X+1)^n - 1 = prod_{e | n} Phi_e(X+1),
// and Res is multiplicative in both arguments.
inline Zint wendt(unsigned n) {
  Zint w = 1;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    for (unsigned e = 1; e <= n; ++e) {
      if (n % e != 0) continue;
      Poly shifted = fermat5::poly_shift_by_1(cyclotomic(e));
      w *= sylvester_bareiss(cyclotomic(d), shifted);
    }
  }
  return w;
}

}  // namespace oracle
