#include <doctest.h>

#include "fermat5/errors.hpp"
#include "fermat5/wendt.hpp"
#include "support/cyclotomic_oracle.hpp"

using namespace fermat5;

TEST_CASE("reference values of W_2, W_8, W_10") {
  CHECK(wendt_exact(2).value == -3);
  CHECK(wendt_exact(8).value == Zint(-1343091375));        // -3^7 * 5^3 * 17^3
  CHECK(wendt_exact(10).value == Zint("-210736858987743"));  // -3 * 11^9 * 31^3
  CHECK(wendt_exact(10).value == Zint(-3) * pow_u(Zint(11), 9) * pow_u(Zint(31), 3));
}

TEST_CASE("W_n = 0 exactly when 6 | n, n <= 36") {
  for (unsigned n = 1; n <= 36; ++n) {
    CAPTURE(n);
    CHECK((wendt_exact(n).value == 0) == (n % 6 == 0));
  }
}

TEST_CASE("operand order is immaterial for even n <= 12") {
  for (unsigned n = 2; n <= 12; n += 2) {
    Zint forward = resultant(xn_minus_1(n), x_plus_1_pow_n_minus_1(n));
    Zint backward = resultant(x_plus_1_pow_n_minus_1(n), xn_minus_1(n));
    CHECK(forward == backward);
  }
}

TEST_CASE("subresultant route matches the cyclotomic-pair oracle, n <= 20") {
  for (unsigned n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(wendt_exact(n).value == oracle::wendt(n));
  }
}

TEST_CASE("oracle reproduces the three reference factored values") {
  CHECK(oracle::wendt(2) == -3);
  CHECK(oracle::wendt(8) == Zint(-1) * pow_u(Zint(3), 7) * pow_u(Zint(5), 3) *
                                pow_u(Zint(17), 3));
  CHECK(oracle::wendt(10) == Zint(-1) * Zint(3) * pow_u(Zint(11), 9) *
                                 pow_u(Zint(31), 3));
}

TEST_CASE("divisibility test examples") {
  CHECK_FALSE(divides_wendt(PrimeModulus(Zint(89)), 8));   // W_8 has no factor 89
  CHECK(divides_wendt(PrimeModulus(Zint(31)), 10));        // 31^3 | W_10
  CHECK(divides_wendt(PrimeModulus(Zint(3)), 2));          // W_2 = -3
  CHECK_THROWS_AS(divides_wendt(PrimeModulus(Zint(89)), 7), ArgumentError);  // 7 does not divide 88
}

TEST_CASE("6 | n short-circuits to true") {
  CHECK(divides_wendt(PrimeModulus(Zint(7)), 6));
  CHECK(divides_wendt(PrimeModulus(Zint(13)), 12));
  CHECK(divides_wendt(PrimeModulus(Zint(31)), 30));
}

TEST_CASE("exact bound is enforced") {
  CHECK_THROWS_AS(wendt_exact(65), BoundError);
  CHECK(wendt_exact(65, 80).value != 0);  // raised bound works
  CHECK_THROWS_AS(wendt_exact(0), ArgumentError);
}

TEST_CASE("oracle equivalence: divides_wendt iff q | W_n (n <= 20, q <= 2000)") {
  for (unsigned n = 1; n <= 20; ++n) {
    if (n % 6 == 0) continue;
    Zint w = wendt_exact(n).value;
    for (std::uint64_t q : primes_in_range(3, 2000)) {
      if ((q - 1) % n != 0) continue;
      bool by_roots = divides_wendt(PrimeModulus(zint_of(q)), n);
      bool by_value = divides(zint_of(q), w);
      CAPTURE(n);
      CAPTURE(q);
      CHECK(by_roots == by_value);
    }
  }
}

TEST_CASE("big-modulus path agrees with the word path") {
  // q just above 2^64 so the Zint kernels run: the roots-of-unity decision
  // must agree with divisibility of the exact value. 2^64 + 81 is prime
  // with 12 | q - 1.
  Zint q = pow_u(Zint(2), 64) + 81;
  REQUIRE(is_prime(q));
  REQUIRE((q - 1) % 12 == 0);
  bool d4 = divides_wendt(PrimeModulus(q), 4);
  CHECK(d4 == divides(q, wendt_exact(4).value));  // W_4 = -375
  bool d3 = divides_wendt(PrimeModulus(q), 3);
  CHECK(d3 == divides(q, wendt_exact(3).value));  // W_3 = 28
  CHECK_FALSE(d4);
  CHECK_FALSE(d3);
}
