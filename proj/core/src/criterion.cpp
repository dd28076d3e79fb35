#include "fermat5/criterion.hpp"

#include <sstream>

#include "fermat5/errors.hpp"
#include "fermat5/modarith.hpp"
#include "fermat5/wendt.hpp"

namespace fermat5 {

const char* to_string(Method m) {
  switch (m) {
    case Method::theorem: return "theorem";
    case Method::corollary2a: return "corollary2a";
    case Method::corollary2b: return "corollary2b";
    case Method::exceptional: return "exceptional";
  }
  return "?";
}

const char* to_string(PrimalityMode m) {
  return m == PrimalityMode::deterministic ? "deterministic" : "probable";
}

std::optional<Method> method_from_string(const std::string& s) {
  if (s == "theorem") return Method::theorem;
  if (s == "corollary2a") return Method::corollary2a;
  if (s == "corollary2b") return Method::corollary2b;
  if (s == "exceptional") return Method::exceptional;
  return std::nullopt;
}

std::optional<PrimalityMode> primality_mode_from_string(const std::string& s) {
  if (s == "deterministic") return PrimalityMode::deterministic;
  if (s == "probable") return PrimalityMode::probable;
  return std::nullopt;
}

const ExceptionalTable& exceptional_table() {
  static const ExceptionalTable t = {{{11, 8},
                                      {23, 20},
                                      {53, 20},
                                      {59, 20},
                                      {67, 4},
                                      {79, 100},
                                      {83, 56},
                                      {127, 4}}};
  return t;
}

std::optional<std::uint64_t> exceptional_n(const Zint& p) {
  if (!fits_u64(p)) return std::nullopt;
  std::uint64_t pw = to_u64(p);
  for (const auto& [pp, nn] : exceptional_table())
    if (pp == pw) return nn;
  return std::nullopt;
}

namespace {

void track(PrimalityMode& acc, Primality pr) {
  if (pr == Primality::probable_prime) acc = PrimalityMode::probable;
}

// q - 1 = n * p with p prime: assemble the factorization without refactoring.
Factorization qm1_factorization(std::uint64_t n, const Zint& p) {
  Factorization f = factorize(zint_of(n));
  bool placed = false;
  for (auto& [fp, fe] : f.factors) {
    if (fp == p) {
      fe += 1;
      placed = true;
      break;
    }
  }
  if (!placed) {
    auto it = f.factors.begin();
    while (it != f.factors.end() && it->first < p) ++it;
    f.factors.insert(it, {p, 1});
  }
  return f;
}

void reject_bad_exponent(const Zint& p) {
  if (p == 3)
    throw ArgumentError(
        "p = 3: the exponent-3 Fermat equation has nontrivial solutions over "
        "Q(sqrt5), e.g. (9+sqrt5)^3 + (9-sqrt5)^3 = 12^3; no certificate exists");
  if (p < 5) throw ArgumentError("exponent must be a prime >= 5");
  if (classify_prime(p) == Primality::composite)
    throw ArgumentError("exponent " + p.get_str() + " is not prime");
}

}  // namespace

ConditionCheck theorem_conditions(const Zint& p, std::uint64_t n) {
  ConditionCheck out;
  if (n % 4 != 2) {
    out.fail_reason = "n != 2 mod 4";
    return out;
  }
  if (!(zint_of(n) < p - 2)) {
    out.fail_reason = "n >= p - 2";
    return out;
  }
  Zint q = zint_of(n) * p + 1;
  Primality pr = classify_prime(q);
  if (pr == Primality::composite) {
    out.fail_reason = "np+1 composite";
    return out;
  }
  track(out.mode, pr);
  std::uint64_t r5 = mod_u64(q, 5);
  if (r5 != 1 && r5 != 4) {
    out.fail_reason = "np+1 != +-1 mod 5";
    return out;
  }
  PrimeModulus m(q);
  track(out.mode, m.primality());
  Factorization qm1 = qm1_factorization(n, p);
  if (divides_wendt(m, n, &qm1)) {
    out.fail_reason = "np+1 divides W_n";
    return out;
  }
  out.ok = true;
  return out;
}

std::optional<std::uint64_t> theorem_witness(const Zint& p,
                                             std::optional<std::uint64_t> n_max,
                                             PrimalityMode* mode_out) {
  Zint limit = p - 2;  // exclusive
  if (n_max) {
    Zint cap = zint_of(*n_max) + 1;
    if (cap < limit) limit = cap;
  }
  for (Zint zn = 2; zn < limit; zn += 4) {
    if (!fits_u64(zn)) break;  // a witness beyond 2^64 is not searchable
    std::uint64_t n = to_u64(zn);
    ConditionCheck c = theorem_conditions(p, n);
    if (c.ok) {
      if (mode_out) *mode_out = c.mode;
      return n;
    }
  }
  return std::nullopt;
}

std::optional<Method> corollary2_check(const Zint& p, PrimalityMode* mode_out) {
  PrimalityMode mode = PrimalityMode::deterministic;
  if (mod_u64(p, 5) == 4) {
    Zint q = 2 * p + 1;
    Primality pr = classify_prime(q);
    if (pr != Primality::composite) {
      track(mode, pr);
      if (mode_out) *mode_out = mode;
      return Method::corollary2a;  // q = -1 mod 5 and q != 3, so q does not divide W_2 = -3
    }
  }
  Zint q = 10 * p + 1;
  Primality pr = classify_prime(q);
  if (pr != Primality::composite) {
    // q = 1 mod 10 and q >= 51, so q is none of 3, 11, 31: the prime support
    // of W_10 = -3 * 11^9 * 31^3.
    if (q <= 31) throw Error("corollary2_check: q <= 31 cannot happen for p >= 5");
    track(mode, pr);
    if (mode_out) *mode_out = mode;
    return Method::corollary2b;
  }
  return std::nullopt;
}

ExceptionalEvidence exceptional_check(const Zint& p, std::uint64_t n,
                                      const CurveOverK& E) {
  if (n % 2 != 0) throw ArgumentError("exceptional_check: n must be even");
  if (!E.validated) throw StateError("exceptional_check: curve not validated");
  reject_bad_exponent(p);

  ExceptionalEvidence ev;
  Zint qz = zint_of(n) * p + 1;
  std::ostringstream detail;
  if (!fits_u64(qz) || to_u64(qz) > (1u << 26))
    throw ArgumentError("exceptional_check: q too large for point counting");
  std::uint64_t q = to_u64(qz);

  ev.q = q;
  ev.q_prime = is_prime_u64(q);
  if (!ev.q_prime) {
    ev.detail = "q = " + std::to_string(q) + " is composite";
    return ev;
  }
  ev.q_split = (q % 5 == 1 || q % 5 == 4);
  if (!ev.q_split) {
    ev.detail = "q = " + std::to_string(q) + " is not split";
    return ev;
  }
  PrimeModulus m(qz);
  Factorization qm1 = qm1_factorization(n, p);
  ev.wendt_free = !divides_wendt(m, n, &qm1);
  if (!ev.wendt_free) {
    ev.detail = "q divides W_" + std::to_string(n);
    return ev;
  }
  TracePair t = trace_pair(E, q);
  ev.trace_first = t.first;
  ev.trace_second = t.second;
  // Multiplicative reduction of the Frey curve at a prime above q would force
  // a trace of +-(q+1) = +-2 mod p there; rule that out at both primes.
  auto excluded = [&](std::int64_t a) {
    Zint r = mod_nonneg(Zint(static_cast<long>(a)), p);
    return r == 2 || r == p - 2;
  };
  ev.traces_excluded = !excluded(t.first) && !excluded(t.second);
  detail << "q=" << q << " traces=(" << t.first << "," << t.second
         << ") W_" << n << "-free=" << (ev.wendt_free ? "yes" : "no");
  if (!ev.traces_excluded) detail << " trace hits +-2 mod p";
  ev.detail = detail.str();
  ev.ok = ev.q_prime && ev.q_split && ev.wendt_free && ev.traces_excluded;
  return ev;
}

std::optional<WitnessCertificate> decide(const Zint& p, const CurveOverK* E,
                                         std::optional<std::uint64_t> n_max) {
  reject_bad_exponent(p);

  WitnessCertificate cert;
  cert.p = p;
  PrimalityMode p_mode = PrimalityMode::deterministic;
  track(p_mode, classify_prime(p));
  auto merged = [&](PrimalityMode m) {
    return (p_mode == PrimalityMode::probable || m == PrimalityMode::probable)
               ? PrimalityMode::probable
               : PrimalityMode::deterministic;
  };

  PrimalityMode mode = PrimalityMode::deterministic;
  if (auto c2 = corollary2_check(p, &mode)) {
    cert.method = *c2;
    cert.n = (*c2 == Method::corollary2a) ? 2 : 10;
    cert.q = zint_of(cert.n) * p + 1;
    cert.primality_mode = merged(mode);
    return cert;
  }

  mode = PrimalityMode::deterministic;
  if (auto n = theorem_witness(p, n_max, &mode)) {
    cert.method = Method::theorem;
    cert.n = *n;
    cert.q = zint_of(*n) * p + 1;
    cert.primality_mode = merged(mode);
    return cert;
  }

  if (auto n = exceptional_n(p)) {
    if (E == nullptr)
      throw StateError("decide: exponent " + p.get_str() +
                       " needs the exceptional path but no curve was supplied");
    ExceptionalEvidence ev = exceptional_check(p, *n, *E);
    if (ev.ok) {
      cert.method = Method::exceptional;
      cert.n = *n;
      cert.q = zint_of(*n) * p + 1;
      cert.primality_mode = p_mode;
      return cert;
    }
  }

  // A capped search may have missed a large witness; retry without the cap.
  if (n_max) {
    mode = PrimalityMode::deterministic;
    if (auto n = theorem_witness(p, std::nullopt, &mode)) {
      cert.method = Method::theorem;
      cert.n = *n;
      cert.q = zint_of(*n) * p + 1;
      cert.primality_mode = merged(mode);
      return cert;
    }
  }
  return std::nullopt;
}

bool verify_certificate(const WitnessCertificate& cert, const CurveOverK* E,
                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    reject_bad_exponent(cert.p);
  } catch (const ArgumentError& e) {
    return fail(e.what());
  }
  if (cert.q != zint_of(cert.n) * cert.p + 1) return fail("q != n*p + 1");

  PrimalityMode mode = PrimalityMode::deterministic;
  track(mode, classify_prime(cert.p));

  switch (cert.method) {
    case Method::theorem: {
      ConditionCheck c = theorem_conditions(cert.p, cert.n);
      if (!c.ok) return fail("theorem conditions: " + c.fail_reason);
      if (c.mode == PrimalityMode::probable) mode = PrimalityMode::probable;
      break;
    }
    case Method::corollary2a: {
      if (cert.n != 2) return fail("corollary2a requires n = 2");
      if (mod_u64(cert.p, 5) != 4) return fail("corollary2a requires p = 4 mod 5");
      Primality pr = classify_prime(cert.q);
      if (pr == Primality::composite) return fail("2p+1 composite");
      track(mode, pr);
      break;
    }
    case Method::corollary2b: {
      if (cert.n != 10) return fail("corollary2b requires n = 10");
      Primality pr = classify_prime(cert.q);
      if (pr == Primality::composite) return fail("10p+1 composite");
      track(mode, pr);
      break;
    }
    case Method::exceptional: {
      auto n = exceptional_n(cert.p);
      if (!n || *n != cert.n) return fail("(p, n) not in the exceptional table");
      if (E == nullptr) return fail("exceptional certificate needs the curve");
      ExceptionalEvidence ev = exceptional_check(cert.p, cert.n, *E);
      if (!ev.ok) return fail("exceptional check failed: " + ev.detail);
      break;
    }
  }
  if (mode != cert.primality_mode) return fail("primality_mode mismatch");
  return true;
}

}  // namespace fermat5
