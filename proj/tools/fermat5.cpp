// fermat5 -- verifies Fermat's Last Theorem over Q(sqrt5) for prime
// exponents, via Wendt-resultant witnesses and their fallbacks, and
// reproduces the finite computations backing the criterion.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fermat5/driver.hpp"
#include "fermat5/errors.hpp"
#include "fermat5/golden.hpp"
#include "fermat5/wendt.hpp"

namespace f5 = fermat5;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::string default_curve_path() {
  if (const char* env = std::getenv("FERMAT5_CURVE")) return env;
  return "data/curve64.txt";
}

f5::CurveOverK load_curve_or_die(const std::string& path) {
  return f5::load_curve(path);  // throws IoError/DataError, mapped below
}

int cmd_witness(const std::string& p_str, std::optional<std::uint64_t> nmax,
                const std::string& curve_path) {
  f5::Zint p(p_str);
  if (p > f5::pow_u(f5::Zint(10), 120))
    throw f5::ArgumentError("witness: exponent too large");
  if (!f5::fits_u64(p) && !nmax)
    throw f5::ArgumentError(
        "witness: searching beyond 2^64 needs an explicit --nmax cap");

  // Prefer the plain witness search so the reported n is the minimal one;
  // fall back to the full decision procedure (corollary shortcuts and the
  // exceptional table) only when the search comes up empty.
  f5::Primality p_class = f5::classify_prime(p);
  if (p_class == f5::Primality::composite)
    throw f5::ArgumentError("witness: " + p.get_str() + " is not prime");
  if (p == 3 || p < 5) {
    f5::decide(p);  // throws the dedicated message
    return kExitUsage;
  }
  bool p_probable = (p_class == f5::Primality::probable_prime);

  f5::PrimalityMode mode = f5::PrimalityMode::deterministic;
  if (auto n = f5::theorem_witness(p, nmax, &mode)) {
    if (p_probable) mode = f5::PrimalityMode::probable;
    f5::Zint q = f5::zint_of(*n) * p + 1;
    std::cout << "p=" << p.get_str() << " n=" << *n << " q=" << q.get_str()
              << " method=theorem";
    if (mode == f5::PrimalityMode::probable) std::cout << " primality_mode=probable";
    std::cout << "\n";
    return kExitOk;
  }

  std::optional<f5::CurveOverK> curve;
  if (f5::exceptional_n(p)) curve = load_curve_or_die(curve_path);
  auto cert = f5::decide(p, curve ? &*curve : nullptr, nmax);
  if (!cert) {
    std::cout << "p=" << p.get_str() << " no witness found";
    if (nmax) std::cout << " (searched n <= " << *nmax << ")";
    std::cout << "\n";
    return kExitVerifyFail;
  }
  std::cout << "p=" << cert->p.get_str() << " n=" << cert->n
            << " q=" << cert->q.get_str() << " method=" << to_string(cert->method);
  if (cert->primality_mode == f5::PrimalityMode::probable)
    std::cout << " primality_mode=probable";
  std::cout << "\n";
  return kExitOk;
}

int cmd_wendt(unsigned n, bool factor) {
  f5::WendtValue w = f5::wendt_exact(n);
  if (!factor) {
    std::cout << w.value.get_str() << "\n";
    return kExitOk;
  }
  if (w.value == 0) {
    std::cout << "0\n";
    return kExitOk;
  }
  f5::Factorization f = f5::factorize(w.value);
  std::cout << f.to_string() << "\n";
  return f.complete ? kExitOk : kExitVerifyFail;
}

int cmd_wendt_divides(const std::string& q_str, std::uint64_t n) {
  f5::PrimeModulus q{f5::Zint(q_str)};
  bool d = f5::divides_wendt(q, n);
  std::cout << "q=" << q.value().get_str() << " n=" << n
            << " divides=" << (d ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_aq(std::uint64_t q, const std::string& curve_path) {
  f5::CurveOverK E = load_curve_or_die(curve_path);
  f5::TracePair t = f5::trace_pair(E, q);
  std::cout << "q=" << q << " aq=" << t.first << "," << t.second << "\n";
  return kExitOk;
}

int cmd_check_exceptional(const std::string& p_str, std::uint64_t n,
                          const std::string& curve_path) {
  f5::CurveOverK E = load_curve_or_die(curve_path);
  f5::Zint p(p_str);
  f5::ExceptionalEvidence ev = f5::exceptional_check(p, n, E);
  std::cout << "p=" << p.get_str() << " n=" << n << " " << ev.detail << "\n"
            << "ok=" << (ev.ok ? "true" : "false") << "\n";
  return ev.ok ? kExitOk : kExitVerifyFail;
}

int cmd_lemma1(std::optional<unsigned> p_class) {
  std::vector<unsigned> classes;
  if (p_class) classes.push_back(*p_class);
  else classes = {1, 5, 7, 11};
  bool all_ok = true;
  for (unsigned c : classes) {
    f5::Lemma1Report rep = f5::lemma1_verify(c);
    std::cout << "p%12=" << c << ": solutions=" << rep.solution_triples
              << " orbits=" << rep.orbits
              << " failing=" << rep.failing_orbits.size()
              << " identities=" << (rep.identity_u_cubed && rep.identity_unit_inverse
                                        ? "ok" : "FAILED")
              << "\n";
    all_ok = all_ok && rep.ok();
  }
  return all_ok ? kExitOk : kExitVerifyFail;
}

int cmd_lemma3(std::size_t samples, std::uint64_t seed) {
  using f5::Lemma3Case;
  bool all_ok = true;
  for (Lemma3Case c : {Lemma3Case::even_a, Lemma3Case::u_1p2u, Lemma3Case::three_usq,
                       Lemma3Case::one_u, Lemma3Case::one_usq2u}) {
    f5::Lemma3Report rep = f5::lemma3_verify(c, samples, seed);
    std::cout << (rep.ok ? "ok   " : "FAIL ") << rep.detail << "\n";
    all_ok = all_ok && rep.ok;
  }
  return all_ok ? kExitOk : kExitVerifyFail;
}

int cmd_verify(const f5::VerifyOptions& opts) {
  f5::VerifySummary s = f5::verify_range(opts);
  std::cout << "range=[" << opts.from << "," << opts.to << ") primes=" << s.primes
            << " certificates=" << s.certificates
            << " failures=" << s.failures.size() << "\n";
  for (const auto& [m, c] : s.by_method)
    std::cout << "  method=" << to_string(m) << " count=" << c << "\n";
  if (!s.failures.empty()) {
    std::cerr << "uncertified primes:";
    for (std::uint64_t p : s.failures) std::cerr << " " << p;
    std::cerr << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}

int cmd_recheck(const std::string& file, const std::string& curve_path) {
  std::optional<f5::CurveOverK> curve;
  try {
    curve = load_curve_or_die(curve_path);
  } catch (const f5::Error&) {
    // exceptional certificates will fail their re-check without the curve
  }
  f5::RecheckResult r = f5::recheck_log(file, curve ? &*curve : nullptr);
  std::cout << "rechecked=" << r.lines << " errors=" << r.errors.size() << "\n";
  for (const std::string& e : r.errors) std::cerr << e << "\n";
  return r.ok() ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermat's Last Theorem over Q(sqrt5): witness search, "
               "range verification and certificate tooling"};
  app.require_subcommand(1);

  std::string curve_path = default_curve_path();

  // witness P
  auto* witness = app.add_subcommand("witness", "Find the verification witness for one exponent");
  std::string w_p;
  std::optional<std::uint64_t> w_nmax;
  witness->add_option("p", w_p, "prime exponent >= 5")->required();
  witness->add_option("--nmax", w_nmax, "largest n to try");
  witness->add_option("--curve", curve_path, "curve data file");

  // verify --from A --to B --out FILE [...]
  auto* verify = app.add_subcommand("verify", "Certify every prime exponent in a range");
  f5::VerifyOptions vo;
  std::string recheck_file;
  verify->add_option("--from", vo.from, "range start (inclusive, >= 5)");
  verify->add_option("--to", vo.to, "range end (exclusive)");
  verify->add_option("--out", vo.out_path, "certificate log (JSONL)");
  verify->add_flag("--resume", vo.resume, "resume from a matching checkpoint");
  verify->add_option("--threads", vo.threads, "worker threads (default: FERMAT5_THREADS or all cores)");
  verify->add_option("--nmax", vo.n_max, "cap the witness search (uncapped retry on failure)");
  verify->add_option("--shard-primes", vo.shard_primes, "primes per checkpointed shard");
  verify->add_option("--curve", curve_path, "curve data file");
  verify->add_option("--recheck", recheck_file, "re-validate an existing log instead of verifying");

  // wendt N [--factor]
  auto* wendt = app.add_subcommand("wendt", "Exact Wendt resultant W_n for small n");
  unsigned wendt_n = 0;
  bool wendt_factor = false;
  wendt->add_option("n", wendt_n, "index n")->required();
  wendt->add_flag("--factor", wendt_factor, "print the prime factorization");

  // wendt-divides Q N
  auto* wdiv = app.add_subcommand("wendt-divides", "Whether a prime q divides W_n (requires n | q-1)");
  std::string wd_q;
  std::uint64_t wd_n = 0;
  wdiv->add_option("q", wd_q, "odd prime")->required();
  wdiv->add_option("n", wd_n, "index n")->required();

  // aq --q Q
  auto* aq = app.add_subcommand("aq", "Frobenius traces of the bundled curve at a split prime");
  std::uint64_t aq_q = 0;
  aq->add_option("--q", aq_q, "split prime (q = +-1 mod 5)")->required();
  aq->add_option("--curve", curve_path, "curve data file");

  // check-exceptional P N
  auto* ce = app.add_subcommand("check-exceptional", "Run the exceptional-exponent check for (p, n)");
  std::string ce_p;
  std::uint64_t ce_n = 0;
  ce->add_option("p", ce_p, "prime exponent")->required();
  ce->add_option("n", ce_n, "even witness index")->required();
  ce->add_option("--curve", curve_path, "curve data file");

  // lemma1-check
  auto* l1 = app.add_subcommand("lemma1-check", "Exhaustive residue-normalization check mod 4");
  std::optional<unsigned> l1_class;
  l1->add_option("--pclass", l1_class, "restrict to one power class (1, 5, 7 or 11 mod 12)");

  // lemma3-check
  auto* l3 = app.add_subcommand("lemma3-check", "Valuation profile of the Frey invariants at 2");
  std::size_t l3_samples = 100;
  std::uint64_t l3_seed = 0x5f3759df;
  l3->add_option("--samples", l3_samples, "random exact realizations per case");
  l3->add_option("--seed", l3_seed, "sampler seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (witness->parsed()) return cmd_witness(w_p, w_nmax, curve_path);
    if (verify->parsed()) {
      if (!recheck_file.empty()) return cmd_recheck(recheck_file, curve_path);
      if (vo.to == 0 || vo.out_path.empty())
        throw f5::ArgumentError("verify needs --from/--to/--out (or --recheck FILE)");
      vo.curve_path = curve_path;
      return cmd_verify(vo);
    }
    if (wendt->parsed()) return cmd_wendt(wendt_n, wendt_factor);
    if (wdiv->parsed()) return cmd_wendt_divides(wd_q, wd_n);
    if (aq->parsed()) return cmd_aq(aq_q, curve_path);
    if (ce->parsed()) return cmd_check_exceptional(ce_p, ce_n, curve_path);
    if (l1->parsed()) return cmd_lemma1(l1_class);
    if (l3->parsed()) return cmd_lemma3(l3_samples, l3_seed);
  } catch (const f5::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const f5::BoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const f5::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const f5::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const f5::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
