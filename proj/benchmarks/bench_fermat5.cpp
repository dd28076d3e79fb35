#include <benchmark/benchmark.h>

#include "fermat5/criterion.hpp"
#include "fermat5/modarith.hpp"
#include "fermat5/poly.hpp"
#include "fermat5/wendt.hpp"

using namespace fermat5;

static void BM_MulMod64(benchmark::State& state) {
  std::uint64_t q = 2305843009213693951ull;  // 2^61 - 1
  std::uint64_t x = 1234567890123456789ull;
  for (auto _ : state) {
    x = fp64::mul(x, x, q) | 1;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MulMod64);

static void BM_PowMod64(benchmark::State& state) {
  std::uint64_t q = 2305843009213693951ull;
  std::uint64_t x = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fp64::pow(x, q - 1, q));
    x += 2;
  }
}
BENCHMARK(BM_PowMod64);

static void BM_IsPrime64(benchmark::State& state) {
  std::uint64_t m = 1000000000039ull;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_prime_u64(m));
    m += 2;
  }
}
BENCHMARK(BM_IsPrime64);

static void BM_SieveSegment(benchmark::State& state) {
  const std::uint64_t span = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t lo = 1000000000;
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_prime(lo, lo + span, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(span));
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 20);

static void BM_DividesWendt(benchmark::State& state) {
  // the hardest witness check below 50: p = 37, n = 34, q = 1259
  PrimeModulus q(Zint(1259));
  Factorization f = factorize(Zint(1258));
  for (auto _ : state) {
    benchmark::DoNotOptimize(divides_wendt(q, 34, &f));
  }
}
BENCHMARK(BM_DividesWendt);

static void BM_WendtExactNoCache(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(resultant(xn_minus_1(n), x_plus_1_pow_n_minus_1(n)));
  }
}
BENCHMARK(BM_WendtExactNoCache)->Arg(10)->Arg(20)->Arg(32);

static void BM_CountPoints(benchmark::State& state) {
  CurveOverK E = parse_curve_record("0,0 -1,1 0,0 0,-1 0,0", "bench");
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  auto roots = fp64::sqrt(5 % q, q);
  ReducedCurve c = reduce_at_split_prime(E, q, roots->first);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_points(c));
  }
}
BENCHMARK(BM_CountPoints)->Arg(89)->Arg(7901);

static void BM_DecidePrime(benchmark::State& state) {
  // representative mid-sweep exponents (none needs the curve)
  std::vector<Zint> ps;
  for (std::uint64_t p : primes_in_range(99900, 100300)) ps.push_back(zint_of(p));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide(ps[i % ps.size()]));
    ++i;
  }
}
BENCHMARK(BM_DecidePrime);

BENCHMARK_MAIN();
