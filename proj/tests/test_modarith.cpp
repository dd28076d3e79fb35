#include <doctest.h>

#include <set>

#include "fermat5/errors.hpp"
#include "fermat5/modarith.hpp"

using namespace fermat5;

TEST_CASE("pow_mod basics") {
  PrimeModulus q(Zint(1000003));
  CHECK(pow_mod(Residue(Zint(2), q), Zint(10)).value() == 1024);

  PrimeModulus q89(Zint(89));
  CHECK(pow_mod(Residue(Zint(3), q89), Zint(88)).value() == 1);  // Fermat

  // empty product
  for (long x : {1, 2, 17, 88}) {
    CHECK(pow_mod(Residue(Zint(x), q89), Zint(0)).value() == 1);
  }
}

TEST_CASE("Fermat little theorem on random samples") {
  SplitMix64 rng(42);
  for (std::uint64_t q : {11ull, 101ull, 65537ull, 1000003ull, 2305843009213693951ull}) {
    PrimeModulus m{zint_of(q)};
    for (int i = 0; i < 20; ++i) {
      Zint x = 1 + zint_of(rng.below(q - 1));
      CHECK(pow_mod(Residue(x, m), zint_of(q - 1)).value() == 1);
    }
  }
}

TEST_CASE("sqrt_mod examples") {
  PrimeModulus q11(Zint(11));
  auto r = sqrt_mod(Residue(Zint(5), q11));
  REQUIRE(r.has_value());
  CHECK(r->first.value() == 4);   // 4^2 = 16 = 5 mod 11
  CHECK(r->second.value() == 7);

  PrimeModulus q31(Zint(31));
  r = sqrt_mod(Residue(Zint(5), q31));
  REQUIRE(r.has_value());
  CHECK(r->first.value() == 6);   // 6^2 = 36 = 5 mod 31
  CHECK(r->second.value() == 25);

  PrimeModulus q5(Zint(5));
  CHECK_FALSE(sqrt_mod(Residue(Zint(2), q5)).has_value());  // squares mod 5: {0,1,4}
}

TEST_CASE("sqrt_mod matches Euler criterion exhaustively for q <= 101") {
  for (std::uint64_t q : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                          29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull,
                          59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull,
                          89ull, 97ull, 101ull}) {
    PrimeModulus m{zint_of(q)};
    for (std::uint64_t a = 1; a < q; ++a) {
      bool euler = fp64::pow(a, (q - 1) / 2, q) == 1;
      auto r = sqrt_mod(Residue(zint_of(a), m));
      CHECK(euler == r.has_value());
      if (r) {
        CHECK(mod_nonneg(r->first.value() * r->first.value(), m.value()) == zint_of(a));
        CHECK(r->first.value() + r->second.value() == m.value());
      }
    }
  }
}

TEST_CASE("primitive_root examples and order verification") {
  auto root_of = [](std::uint64_t q) {
    PrimeModulus m{zint_of(q)};
    return to_u64(primitive_root(m, factorize(zint_of(q - 1))).value());
  };
  CHECK(root_of(11) == 2);
  CHECK(root_of(89) == 3);  // 2^11 = 1 mod 89, so 2 is skipped
  CHECK(root_of(3) == 2);

  // returned element has order exactly q-1
  for (std::uint64_t q : {11ull, 89ull, 97ull, 7901ull}) {
    std::uint64_t g = root_of(q);
    std::set<std::uint64_t> powers;
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      powers.insert(x);
      x = fp64::mul(x, g, q);
    }
    CHECK(powers.size() == q - 1);
  }
}

TEST_CASE("primitive_root rejects inconsistent factorizations") {
  PrimeModulus m(Zint(89));
  Factorization wrong = factorize(Zint(44));  // not q-1
  CHECK_THROWS_AS(primitive_root(m, wrong), ArgumentError);
}

TEST_CASE("nth_roots_of_unity") {
  PrimeModulus q11(Zint(11));
  auto f10 = factorize(Zint(10));
  auto roots2 = nth_roots_of_unity(q11, 2, f10);
  CHECK(std::set<Zint>(roots2.begin(), roots2.end()) == std::set<Zint>{Zint(1), Zint(10)});

  PrimeModulus q89(Zint(89));
  auto roots8 = nth_roots_of_unity(q89, 8, factorize(Zint(88)));
  CHECK(roots8.size() == 8);
  for (const Zint& r : roots8) CHECK(fpz::pow(r, Zint(8), q89.value()) == 1);

  PrimeModulus q31(Zint(31));
  auto roots10 = nth_roots_of_unity(q31, 10, factorize(Zint(30)));
  CHECK(std::set<Zint>(roots10.begin(), roots10.end()).size() == 10);
  for (const Zint& r : roots10) CHECK(fpz::pow(r, Zint(10), q31.value()) == 1);

  CHECK_THROWS_AS(nth_roots_of_unity(q31, 7, factorize(Zint(30))), ArgumentError);
}

TEST_CASE("roots of unity: cardinality and closure, exhaustive q <= 101") {
  for (std::uint64_t q : {5ull, 13ull, 29ull, 61ull, 73ull, 101ull}) {
    PrimeModulus m{zint_of(q)};
    Factorization f = factorize(zint_of(q - 1));
    for (std::uint64_t n = 1; n < q; ++n) {
      if ((q - 1) % n != 0) continue;
      auto roots = nth_roots_of_unity(m, n, f);
      std::set<Zint> s(roots.begin(), roots.end());
      CHECK(s.size() == n);
      for (const Zint& a : s)
        for (const Zint& b : s) CHECK(s.count(mod_nonneg(a * b, m.value())) == 1);
    }
  }
}

TEST_CASE("word and big kernels agree bit for bit") {
  SplitMix64 rng(7);
  std::vector<std::uint64_t> moduli = {3, 101, 65537, 4294967311ull,
                                       2305843009213693951ull};
  for (std::uint64_t q : moduli) {
    Zint zq = zint_of(q);
    for (int i = 0; i < 25; ++i) {
      std::uint64_t a = 1 + rng.below(q - 1);
      std::uint64_t e = rng.next();
      CHECK(zint_of(fp64::pow(a, e, q)) == fpz::pow(zint_of(a), zint_of(e), zq));
      CHECK(fp64::legendre(a, q) == fpz::legendre(zint_of(a), zq));
      auto rw = fp64::sqrt(a, q);
      auto rz = fpz::sqrt(zint_of(a), zq);
      CHECK(rw.has_value() == rz.has_value());
      if (rw) {
        CHECK(zint_of(rw->first) == rz->first);
        CHECK(zint_of(rw->second) == rz->second);
      }
    }
  }
}

TEST_CASE("PrimeModulus rejects bad moduli") {
  CHECK_THROWS_AS(PrimeModulus(Zint(91)), ArgumentError);  // 7*13
  CHECK_THROWS_AS(PrimeModulus(Zint(8)), ArgumentError);
  CHECK_THROWS_AS(PrimeModulus(Zint(1)), ArgumentError);
  CHECK(PrimeModulus(Zint(3)).word());
  Zint googol_q = pow_u(Zint(10), 100) + 267;
  CHECK(PrimeModulus(googol_q).primality() == Primality::probable_prime);
}
