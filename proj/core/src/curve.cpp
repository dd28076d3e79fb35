#include "fermat5/curve.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "fermat5/errors.hpp"
#include "fermat5/modarith.hpp"

namespace fermat5 {

void compute_invariants(CurveOverK& E) {
  const GoldenInt &a1 = E.a1, &a2 = E.a2, &a3 = E.a3, &a4 = E.a4, &a6 = E.a6;
  auto k = [](long v) { return GoldenInt{Zint(v), Zint(0)}; };
  E.b2 = a1 * a1 + k(4) * a2;
  E.b4 = k(2) * a4 + a1 * a3;
  E.b6 = a3 * a3 + k(4) * a6;
  E.b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  E.c4 = E.b2 * E.b2 - k(24) * E.b4;
  E.c6 = -(E.b2 * E.b2 * E.b2) + k(36) * E.b2 * E.b4 - k(216) * E.b6;
  E.disc = -(E.b2 * E.b2 * E.b8) - k(8) * (E.b4 * E.b4 * E.b4) -
           k(27) * (E.b6 * E.b6) + k(9) * E.b2 * E.b4 * E.b6;
  GoldenInt lhs = E.c4 * E.c4 * E.c4 - E.c6 * E.c6;
  if (!(lhs == k(1728) * E.disc)) throw Error("compute_invariants: identity failed");
}

namespace {

GoldenInt parse_coeff(const std::string& tok) {
  auto comma = tok.find(',');
  if (comma == std::string::npos)
    throw DataError("curve record: coefficient must be 'a,b', got '" + tok + "'");
  try {
    Zint a(tok.substr(0, comma));
    Zint b(tok.substr(comma + 1));
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw DataError("curve record: bad integer in '" + tok + "'");
  }
}

}  // namespace

CurveOverK parse_curve_record(const std::string& text, std::string label) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() != 5)
    throw DataError("curve record: expected 5 coefficients, got " +
                    std::to_string(tokens.size()));
  CurveOverK E;
  E.a1 = parse_coeff(tokens[0]);
  E.a2 = parse_coeff(tokens[1]);
  E.a3 = parse_coeff(tokens[2]);
  E.a4 = parse_coeff(tokens[3]);
  E.a6 = parse_coeff(tokens[4]);
  E.label = std::move(label);
  compute_invariants(E);
  if (E.disc.is_zero()) throw DataError("curve record: singular model");
  return E;
}

void validate_curve(CurveOverK& E) {
  if (E.disc.is_zero()) throw DataError("validate_curve: singular model");
  TracePair t89 = trace_pair(E, 89);
  if (!(t89.first == -6 && t89.second == -6))
    throw DataError("validate_curve: trace pair at 89 is (" +
                    std::to_string(t89.first) + "," + std::to_string(t89.second) +
                    "), expected (-6,-6) -- wrong curve data");
  // full rational 2-torsion forces a = q+1 mod 4; spot-check ten split primes
  const std::uint64_t sample[] = {11, 19, 29, 31, 41, 59, 61, 71, 79, 101};
  for (std::uint64_t q : sample) {
    TracePair t = trace_pair(E, q);
    auto congruent = [&](std::int64_t a) {
      return ((a - static_cast<std::int64_t>(q) - 1) % 4 + 4) % 4 == 0;
    };
    if (!congruent(t.first) || !congruent(t.second))
      throw DataError("validate_curve: trace at " + std::to_string(q) +
                      " violates a = q+1 mod 4");
  }
  E.validated = true;
}

CurveOverK load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_curve: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (ss.str().empty()) throw DataError("load_curve: empty file '" + path + "'");
  CurveOverK E = parse_curve_record(ss.str(), path);
  validate_curve(E);
  return E;
}

namespace {

std::uint64_t reduce_coeff(const GoldenInt& x, std::uint64_t q, std::uint64_t phi_q) {
  std::uint64_t a = mod_u64(x.a, q);
  std::uint64_t b = mod_u64(x.b, q);
  return (a + fp64::mul(b, phi_q, q)) % q;
}

}  // namespace

ReducedCurve reduce_at_split_prime(const CurveOverK& E, std::uint64_t q,
                                   std::uint64_t root) {
  if (q % 2 == 0 || q < 3) throw ArgumentError("reduce: q must be an odd prime");
  if (q % 5 != 1 && q % 5 != 4)
    throw ArgumentError("reduce: " + std::to_string(q) + " is not split (q != +-1 mod 5)");
  if (fp64::mul(root, root, q) != 5 % q)
    throw ArgumentError("reduce: root^2 != 5 mod q");

  std::uint64_t inv2 = (q + 1) / 2;  // 2 * (q+1)/2 = q+1 = 1 mod q
  std::uint64_t phi_q = fp64::mul((1 + root) % q, inv2, q);

  if (reduce_coeff(E.disc, q, phi_q) == 0)
    throw ArgumentError("reduce: bad reduction at " + std::to_string(q));

  // Short form y^2 = x^3 - 27 c4 x - 54 c6, an F_q-isomorphic model (q > 3).
  std::uint64_t c4q = reduce_coeff(E.c4, q, phi_q);
  std::uint64_t c6q = reduce_coeff(E.c6, q, phi_q);
  std::uint64_t A = fp64::mul(q - 27 % q, c4q, q);
  std::uint64_t B = fp64::mul(q - 54 % q, c6q, q);
  return {q, A, B};
}

std::int64_t count_points(const ReducedCurve& c) {
  const std::uint64_t q = c.q;
  if (q < 3 || q % 2 == 0) throw ArgumentError("count_points: q must be an odd prime");
  // discriminant of x^3 + Ax + B is -(4A^3 + 27B^2)
  std::uint64_t d = (fp64::mul(4, fp64::pow(c.A, 3, q), q) +
                     fp64::mul(27, fp64::mul(c.B, c.B, q), q)) % q;
  if (d == 0) throw ArgumentError("count_points: singular reduction");

  std::vector<std::uint8_t> is_sq(q, 0);
  for (std::uint64_t e = 0; e <= (q - 1) / 2; ++e) is_sq[fp64::mul(e, e, q)] = 1;

  std::int64_t sum = 0;  // sum of chi(x^3 + Ax + B)
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t t = (fp64::mul(x, fp64::mul(x, x, q) + c.A, q) + c.B) % q;
    if (t == 0) continue;
    sum += is_sq[t] ? 1 : -1;
  }
  std::int64_t a = -sum;  // #E = q + 1 + sum, a = q + 1 - #E
  if (static_cast<double>(a) * static_cast<double>(a) > 4.0 * static_cast<double>(q))
    throw Error("count_points: Hasse bound violated (arithmetic bug)");
  return a;
}

TracePair trace_pair(const CurveOverK& E, std::uint64_t q) {
  if (q == 5) throw ArgumentError("trace_pair: 5 is ramified");
  if (q % 5 != 1 && q % 5 != 4)
    throw ArgumentError("trace_pair: " + std::to_string(q) + " is not split");
  auto roots = fp64::sqrt(5 % q, q);
  if (!roots) throw Error("trace_pair: 5 must be a square mod a split prime");
  std::int64_t a1 = count_points(reduce_at_split_prime(E, q, roots->first));
  std::int64_t a2 = count_points(reduce_at_split_prime(E, q, roots->second));
  return {q, a1, a2};
}

}  // namespace fermat5
