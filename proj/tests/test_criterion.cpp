#include <doctest.h>

#include <string>

#include "fermat5/criterion.hpp"
#include "fermat5/errors.hpp"
#include "fermat5/wendt.hpp"

using namespace fermat5;

namespace {

const std::string kCurvePath = std::string(FERMAT5_DATA_DIR) + "/curve64.txt";

const CurveOverK& bundled() {
  static CurveOverK E = load_curve(kCurvePath);
  return E;
}

}  // namespace

TEST_CASE("witness table for p < 50, with exhaustive minimality") {
  const std::pair<std::uint64_t, std::uint64_t> table[] = {
      {5, 2},  {13, 10}, {17, 14}, {19, 10}, {29, 2},
      {31, 10}, {37, 34}, {41, 38}, {43, 10}, {47, 14}};
  for (const auto& [p, n] : table) {
    CAPTURE(p);
    auto found = theorem_witness(zint_of(p));
    REQUIRE(found.has_value());
    CHECK(*found == n);
    // no smaller admissible n: every candidate below fails some condition
    for (std::uint64_t m = 2; m < n; m += 4) {
      CHECK_FALSE(theorem_conditions(zint_of(p), m).ok);
    }
  }
}

TEST_CASE("the witness search comes up empty exactly on the hard exponents") {
  for (std::uint64_t p : {7ull, 11ull, 23ull, 53ull, 59ull, 67ull, 79ull, 83ull, 127ull}) {
    CAPTURE(p);
    CHECK_FALSE(theorem_witness(zint_of(p)).has_value());
  }
}

TEST_CASE("witness conditions reject bad n directly") {
  CHECK_FALSE(theorem_conditions(Zint(13), 4).ok);   // 4 != 2 mod 4
  CHECK_FALSE(theorem_conditions(Zint(13), 12).ok);  // 12 >= p-2
  CHECK_FALSE(theorem_conditions(Zint(13), 2).ok);   // 27 composite
  CHECK_FALSE(theorem_conditions(Zint(13), 6).ok);   // W_6 = 0
  CHECK(theorem_conditions(Zint(13), 10).ok);
}

TEST_CASE("corollary-2 shortcuts") {
  CHECK(corollary2_check(Zint(29)) == Method::corollary2a);  // 29 = 4 mod 5, 59 prime
  CHECK(corollary2_check(Zint(13)) == Method::corollary2b);  // 131 prime
  CHECK(corollary2_check(Zint(7)) == Method::corollary2b);   // 71 prime
  CHECK_FALSE(corollary2_check(Zint(11)).has_value());       // 11 = 1 mod 5, 111 = 3*37
  CHECK_FALSE(corollary2_check(Zint(5)).has_value());        // 51 = 3*17
  // 19 = 4 mod 5 but 39 = 3*13, falls through to corollary2b via 191
  CHECK(corollary2_check(Zint(19)) == Method::corollary2b);
}

TEST_CASE("exceptional table carries exactly the eight hard exponents") {
  const ExceptionalTable& t = exceptional_table();
  REQUIRE(t.size() == 8);
  using P = std::pair<std::uint64_t, std::uint64_t>;
  CHECK(t[0] == P{11, 8});
  CHECK(t[1] == P{23, 20});
  CHECK(t[2] == P{53, 20});
  CHECK(t[3] == P{59, 20});
  CHECK(t[4] == P{67, 4});
  CHECK(t[5] == P{79, 100});
  CHECK(t[6] == P{83, 56});
  CHECK(t[7] == P{127, 4});
  CHECK(exceptional_n(Zint(53)) == 20);
  CHECK_FALSE(exceptional_n(Zint(13)).has_value());
}

TEST_CASE("exceptional check passes for all eight pairs, with evidence") {
  for (const auto& [p, n] : exceptional_table()) {
    CAPTURE(p);
    ExceptionalEvidence ev = exceptional_check(zint_of(p), n, bundled());
    CHECK(ev.ok);
    CHECK(ev.q == n * p + 1);
    CHECK(ev.q_prime);
    CHECK(ev.q_split);
    CHECK(ev.wendt_free);
    CHECK(ev.traces_excluded);
  }
  // the reference value at p = 11: q = 89, both traces -6, and -6 = 5 mod 11
  ExceptionalEvidence ev = exceptional_check(Zint(11), 8, bundled());
  CHECK(ev.trace_first == -6);
  CHECK(ev.trace_second == -6);
}

TEST_CASE("exceptional check fails honestly on bad inputs") {
  // n divisible by 6 forces W_n = 0, divisible by every q
  ExceptionalEvidence ev = exceptional_check(Zint(11), 6, bundled());
  CHECK_FALSE(ev.ok);
  CHECK_FALSE(ev.wendt_free);

  CHECK_THROWS_AS(exceptional_check(Zint(11), 7, bundled()), ArgumentError);

  CurveOverK raw = parse_curve_record("0,0 -1,1 0,0 0,-1 0,0", "unvalidated");
  CHECK_THROWS_AS(exceptional_check(Zint(11), 8, raw), StateError);
}

TEST_CASE("decide: paths and precedence") {
  auto c29 = decide(Zint(29));
  REQUIRE(c29.has_value());
  CHECK(c29->method == Method::corollary2a);
  CHECK(c29->n == 2);
  CHECK(c29->q == 59);

  auto c13 = decide(Zint(13));
  REQUIRE(c13.has_value());
  CHECK(c13->method == Method::corollary2b);  // shortcut fires before the search
  CHECK(c13->q == 131);

  auto c5 = decide(Zint(5));
  REQUIRE(c5.has_value());
  CHECK(c5->method == Method::theorem);
  CHECK(c5->n == 2);
  CHECK(c5->q == 11);

  auto c83 = decide(Zint(83), &bundled());
  REQUIRE(c83.has_value());
  CHECK(c83->method == Method::exceptional);
  CHECK(c83->n == 56);

  // all produced certificates re-verify from their fields
  for (const auto& cert : {*c29, *c13, *c5, *c83}) {
    std::string why;
    CHECK_MESSAGE(verify_certificate(cert, &bundled(), &why), why);
  }
}

TEST_CASE("decide requires the curve only for exceptional exponents") {
  CHECK_THROWS_AS(decide(Zint(11)), StateError);
  CHECK(decide(Zint(13)).has_value());  // no curve needed
}

TEST_CASE("decide rejects 3 with the dedicated message, and non-primes") {
  CHECK_THROWS_WITH_AS(decide(Zint(3)),
                       doctest::Contains("(9+sqrt5)^3 + (9-sqrt5)^3 = 12^3"),
                       ArgumentError);
  CHECK_THROWS_AS(decide(Zint(2)), ArgumentError);
  CHECK_THROWS_AS(decide(Zint(9)), ArgumentError);
  CHECK_THROWS_AS(decide(Zint(1)), ArgumentError);
}

TEST_CASE("decide never uses the exceptional path off the table") {
  for (std::uint64_t p : primes_in_range(5, 200)) {
    auto cert = decide(zint_of(p), &bundled());
    REQUIRE(cert.has_value());
    if (!exceptional_n(zint_of(p)))
      CHECK(cert->method != Method::exceptional);
  }
}

TEST_CASE("capped search falls back, then retries uncapped") {
  // p = 37 has minimal witness 34; a cap below that must not lose it
  auto cert = decide(Zint(37), nullptr, 10);
  REQUIRE(cert.has_value());
  CHECK(cert->method == Method::theorem);
  CHECK(cert->n == 34);
}

TEST_CASE("googol demonstration: n = 754 verifies with probable primality") {
  Zint p = pow_u(Zint(10), 100) + 267;
  ConditionCheck c = theorem_conditions(p, 754);
  CHECK(c.ok);
  CHECK(c.mode == PrimalityMode::probable);
  // spot-check the side conditions recorded in the certificate
  Zint q = zint_of(754) * p + 1;
  CHECK(mod_u64(q, 5) == 4);
  CHECK(mod_u64(q, 4) == 3);  // n = 2 mod 4 makes q = 3 mod 4
}

TEST_CASE("certificate tampering is caught on re-verification") {
  auto good = decide(Zint(13));
  REQUIRE(good.has_value());
  std::string why;

  WitnessCertificate bad = *good;
  bad.n = 14;
  bad.q = zint_of(14) * 13 + 1;
  CHECK_FALSE(verify_certificate(bad, nullptr, &why));

  bad = *good;
  bad.q = bad.q + 2;
  CHECK_FALSE(verify_certificate(bad, nullptr, &why));

  bad = *good;
  bad.primality_mode = PrimalityMode::probable;
  CHECK_FALSE(verify_certificate(bad, nullptr, &why));

  bad = *good;
  bad.method = Method::exceptional;
  CHECK_FALSE(verify_certificate(bad, nullptr, &why));
}
