#include <benchmark/benchmark.h>

#include <random>

#include "fermatci/fermat_ci.hpp"
#include "fermatci/linalg.hpp"
#include "fermatci/ratfunc.hpp"

using namespace fermatci;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, const PrimeField& f, std::size_t nvars, unsigned terms, unsigned deg) {
  std::uniform_int_distribution<Exponent> ex(0, deg);
  std::uniform_int_distribution<Coeff> co(1, f.characteristic() - 1);
  std::vector<Term> ts;
  for (unsigned i = 0; i < terms; ++i) {
    std::vector<Exponent> e(nvars);
    for (auto& x : e) x = ex(rng);
    ts.push_back(Term{Monomial(std::move(e)), co(rng)});
  }
  MultiPoly out(f, nvars, std::move(ts));
  return out.is_zero() ? MultiPoly::constant(f, nvars, 1) : out;
}

// gcd of (c a, c b) for random a, b, c in 3 variables.
void BM_Gcd(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  const unsigned deg = static_cast<unsigned>(state.range(1));
  std::mt19937_64 rng(7);
  const MultiPoly c = random_poly(rng, f, 3, 4, deg);
  const MultiPoly a = c * random_poly(rng, f, 3, 4, deg);
  const MultiPoly b = c * random_poly(rng, f, 3, 4, deg);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_Gcd)->Args({2, 2})->Args({2, 4})->Args({3, 4})->Args({10007, 4});

// Derivative of a product of random rational functions.
void BM_Partial(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(11);
  auto rf = [&] { return RatFunc(random_poly(rng, f, 3, 3, 2), random_poly(rng, f, 3, 3, 2)); };
  const RatFunc g = rf() * rf();
  for (auto _ : state) benchmark::DoNotOptimize(g.partial(0));
}
BENCHMARK(BM_Partial)->Arg(2)->Arg(3)->Arg(5);

// Rank of an n x (n+1) matrix of random linear forms in n variables.
void BM_Rank(benchmark::State& state) {
  const PrimeField f(3);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  RatMatrix m(n, std::vector<RatFunc>(n + 1, RatFunc::zero(f, n)));
  for (auto& row : m) {
    for (auto& x : row) x = RatFunc(random_poly(rng, f, n, 2, 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank_over_field(m));
}
BENCHMARK(BM_Rank)->DenseRange(2, 5);

// Full base-change chain for generic coefficients.
void BM_BuildChain(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto N = static_cast<unsigned>(state.range(1));
  const auto r = static_cast<unsigned>(state.range(2));
  for (auto _ : state) {
    FieldRegistry reg;
    FermatCI ci = generic_fermat_ci(reg, p, 1, N, r);
    benchmark::DoNotOptimize(build_chain(reg, ci));
  }
}
BENCHMARK(BM_BuildChain)->Args({2, 2, 1})->Args({2, 4, 3})->Args({3, 4, 2})->Args({5, 4, 3});

}  // namespace
BENCHMARK_MAIN();
