#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fermat5/zint.hpp"

namespace fermat5 {

// An element a + b*phi of Z[phi], phi = (1+sqrt5)/2, phi^2 = 1 + phi.
// This is the full ring of integers of Q(sqrt5).
struct GoldenInt {
  Zint a, b;

  GoldenInt() : a(0), b(0) {}
  GoldenInt(Zint a_, Zint b_) : a(std::move(a_)), b(std::move(b_)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  friend bool operator==(const GoldenInt& x, const GoldenInt& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend GoldenInt operator+(const GoldenInt& x, const GoldenInt& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend GoldenInt operator-(const GoldenInt& x, const GoldenInt& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend GoldenInt operator-(const GoldenInt& x) { return {-x.a, -x.b}; }
  // (a+b phi)(c+d phi) = (ac+bd) + (ad+bc+bd) phi
  friend GoldenInt operator*(const GoldenInt& x, const GoldenInt& y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }

  std::string str() const;  // "a+b*phi" rendering
};

inline const GoldenInt kPhi{0, 1};

// N(a + b phi) = a^2 + ab - b^2; multiplicative.
Zint norm(const GoldenInt& x);

// Galois conjugate: phi -> 1 - phi.
GoldenInt conj(const GoldenInt& x);

// Valuation at the prime above 2 (inert, residue degree 2):
// v(x) = v2(N(x)) / 2. The 2-adic valuation of a nonzero norm is always even.
unsigned long v_p2(const GoldenInt& x);

GoldenInt pow_golden(const GoldenInt& x, unsigned long e);

enum class SplitType { split, inert, ramified };

// How a rational prime q factors in Z[phi]: split iff q = +-1 mod 5,
// ramified only at 5.
SplitType split_type(const Zint& q);

// ---------------------------------------------------------------------------
// The residue ring R = Z[phi] / (4). (2) is the square of no ideal -- 2 is
// inert -- so (4) is the square of the maximal ideal (2), R is local with 16
// elements and 12 units, and every element is x + 2y with x, y in {0,1,u,u^2},
// u being the class of phi.
// ---------------------------------------------------------------------------

class Res4 {
 public:
  Res4() : a_(0), b_(0) {}
  Res4(unsigned a, unsigned b) : a_(a & 3u), b_(b & 3u) {}
  static Res4 of(const GoldenInt& x) {
    return Res4(static_cast<unsigned>(mod_u64(x.a, 4)),
                static_cast<unsigned>(mod_u64(x.b, 4)));
  }

  unsigned a() const { return a_; }
  unsigned b() const { return b_; }
  unsigned code() const { return a_ + 4 * b_; }  // [0, 16)
  static Res4 from_code(unsigned c) { return Res4(c & 3u, (c >> 2) & 3u); }

  bool is_unit() const { return (a_ & 1u) != 0 || (b_ & 1u) != 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend bool operator==(Res4 x, Res4 y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend Res4 operator+(Res4 x, Res4 y) { return Res4(x.a_ + y.a_, x.b_ + y.b_); }
  friend Res4 operator-(Res4 x) { return Res4(4 - x.a_, 4 - x.b_); }
  friend Res4 operator*(Res4 x, Res4 y) {
    unsigned ac = x.a_ * y.a_ + x.b_ * y.b_;
    unsigned bd = x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_;
    return Res4(ac, bd);
  }

  Res4 pow(unsigned e) const;
  GoldenInt lift() const { return GoldenInt(Zint(a_), Zint(b_)); }

  // Canonical x + 2y spelling with x, y in {0, 1, u, u^2}, e.g. "u^2+2u".
  std::string label() const;

 private:
  unsigned a_, b_;
};

inline const Res4 kU{0, 1};      // class of phi
inline const Res4 kUsq{1, 1};    // u^2 = 1 + u
inline const Res4 kOne{1, 0};

struct RingMod4 {
  std::array<Res4, 16> all;
  std::vector<Res4> units;      // 12 of them
  std::vector<Res4> non_units;  // {0, 2, 2u, 2u^2}
  std::array<bool, 16> is_square;  // squares of R
};

const RingMod4& ring_mod4();

// x^p in R, which depends on p only through p mod 12 (and in fact only
// through p mod 6 on units; non-units square to zero).
// p_class must be coprime to 12, i.e. in {1, 5, 7, 11}.
Res4 pth_power_mod4(Res4 x, unsigned p_class);

// ---------------------------------------------------------------------------
// Normalization of hypothetical Fermat triples mod 4.
//
// For every residue triple (a,b,c) with a^p + b^p + c^p = 0 in R and the
// coprimality pattern of a genuine solution (all units, or exactly one
// element divisible by 2), the orbit under coordinate permutations, global
// sign and unit scaling must contain a representative with either
//   (1) 2 | a and b a square mod 4, or
//   (2) all units and (a^p, b^p) mod 4 one of
//       (u, 1+2u), (3, u^2), (1, u), (1, u^2+2u).
// lemma1_verify checks this exhaustively for one power class.
// ---------------------------------------------------------------------------

struct Lemma1Report {
  unsigned p_class = 0;
  std::size_t solution_triples = 0;
  std::size_t orbits = 0;
  std::vector<std::array<std::uint8_t, 3>> failing_orbits;
  bool identity_u_cubed = false;     // 1 + 2u = u^3 in Z[phi]
  bool identity_unit_inverse = false;  // u(u^2+2) = 1 + 4u in Z[phi]
  bool ok() const {
    return failing_orbits.empty() && identity_u_cubed && identity_unit_inverse;
  }
};

Lemma1Report lemma1_verify(unsigned p_class);

// ---------------------------------------------------------------------------
// Frey invariants of y^2 = x(x - A)(x + B) with C := -A - B:
//   c4 = 16(A^2 + AB + B^2), c6 = -32(A-B)(B-C)(C-A), delta = 16(ABC)^2.
// ---------------------------------------------------------------------------

struct FreyInvariants {
  GoldenInt c4, c6, delta;
};

// Throws ArgumentError if any of A, B, C = -A-B vanishes. The identity
// c4^3 - c6^2 = 1728*delta is checked on every call.
FreyInvariants frey_invariants(const GoldenInt& A, const GoldenInt& B);

// ---------------------------------------------------------------------------
// Valuation profile of the Frey invariants at the prime above 2, by
// congruence case of (A, B) mod 4. Sampling is over arbitrary exact elements
// realizing the residue class (with C = -A-B); the even case additionally
// prescribes v(A) in {11, 12}, matching A = a^p with 2 | a and p >= 11.
//
// Expected profiles (v(c4), v(c6), v(delta)):
//   even case            (4, 6, 4 + 2 v(ABC)), so >= 26 given v(A) >= 11
//   (A,B) = (u, 1+2u)    (6, 5, 4)   [v(c4) = 6 on lifts generic mod 8;
//                                     a 1/4-density stratum has v(c4) >= 7]
//   (A,B) = (3, u^2)     (5, 5, 4)
//   (A,B) = (1, u)       (5, 5, 4)
//   (A,B) = (1, u^2+2u)  (5, 5, 4), and v(A^2+AB+B^2) = 1
// ---------------------------------------------------------------------------

enum class Lemma3Case { even_a, u_1p2u, three_usq, one_u, one_usq2u };

const char* to_string(Lemma3Case c);

struct Lemma3Report {
  Lemma3Case kase;
  std::size_t samples = 0;
  bool ok = false;
  std::string detail;  // human-readable summary of what was observed

  // observed valuations (of accepted samples)
  long vc4_min = -1, vc4_max = -1;
  long vc6 = -1, vdelta = -1;          // -2 when not constant (failure)
  std::size_t vc4_generic = 0;         // samples with v(c4) == 6 (u_1p2u only)
  std::size_t vc4_excess = 0;          // samples with v(c4) >= 7 (u_1p2u only)
  bool stratification_ok = true;       // mod-8 prediction matched observation
  bool remarque_ok = true;             // v(A^2+AB+B^2) == 1 in case one_usq2u
};

Lemma3Report lemma3_verify(Lemma3Case kase, std::size_t samples,
                           std::uint64_t seed = 0x5f3759df);

}  // namespace fermat5
