// Microbenchmarks for the hot paths: scalar arithmetic, decomposition,
// span closure and the derivation solver.  Sizes are the ones the test
// suites actually use, so regressions here show up as suite slowdowns.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "padop/derivation.hpp"
#include "padop/funcalc.hpp"
#include "padop/ldu.hpp"
#include "padop/matrix.hpp"
#include "padop/rng.hpp"
#include "padop/scalar.hpp"
#include "padop/span.hpp"

using namespace padop;

namespace {

constexpr int kPrec = 32;

PadicScalar random_unit(Rng& rng, std::uint32_t p, std::int64_t vlo = 0,
                        std::int64_t vhi = 0) {
  std::vector<std::uint32_t> d(kPrec);
  d[0] = static_cast<std::uint32_t>(rng.range(1, p - 1));
  for (int k = 1; k < kPrec; ++k)
    d[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(rng.below(p));
  return PadicScalar::from_digit_string(p, rng.range(vlo, vhi), d);
}

PMatrix random_matrix(Rng& rng, std::uint32_t p, int n, std::int64_t vlo,
                      std::int64_t vhi) {
  PMatrix a(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = random_unit(rng, p, vlo, vhi);
  return a;
}

std::vector<PMatrix> full_algebra_gens(std::uint32_t p, int n) {
  PMatrix diag(p, n, n);
  for (int i = 0; i < n; ++i)
    diag.at(i, i) = PadicScalar::from_integer(p, i + 1, kPrec);
  PMatrix shift(p, n, n);
  for (int i = 0; i < n; ++i)
    shift.at((i + 1) % n, i) = PadicScalar::one(p, kPrec);
  return {diag, shift};
}

void bm_scalar_mul(benchmark::State& state) {
  Rng rng(7);
  const std::uint32_t p = 7;
  const PadicScalar a = random_unit(rng, p, -2, 2);
  const PadicScalar b = random_unit(rng, p, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_scalar_mul);

void bm_scalar_div(benchmark::State& state) {
  Rng rng(11);
  const std::uint32_t p = 7;
  const PadicScalar a = random_unit(rng, p, -2, 2);
  const PadicScalar b = random_unit(rng, p, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(bm_scalar_div);

void bm_matrix_mul(benchmark::State& state) {
  Rng rng(13);
  const int n = static_cast<int>(state.range(0));
  const PMatrix a = random_matrix(rng, 5, n, -1, 1);
  const PMatrix b = random_matrix(rng, 5, n, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_matrix_mul)->Arg(4)->Arg(8);

void bm_ldu(benchmark::State& state) {
  Rng rng(17);
  const int n = static_cast<int>(state.range(0));
  const PMatrix a = random_matrix(rng, 5, n, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ldu_decompose(a));
}
BENCHMARK(bm_ldu)->Arg(4)->Arg(8);

void bm_close_span(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto gens = full_algebra_gens(7, n);
  for (auto _ : state) benchmark::DoNotOptimize(close_span(gens));
}
BENCHMARK(bm_close_span)->Arg(2)->Arg(3)->Arg(4);

void bm_derivation_space(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto alg = close_span(full_algebra_gens(7, n));
  for (auto _ : state)
    benchmark::DoNotOptimize(derivation_space(alg, Codomain::kSelf));
}
BENCHMARK(bm_derivation_space)->Arg(2)->Arg(3);

void bm_solve_inner(benchmark::State& state) {
  Rng rng(19);
  const int n = static_cast<int>(state.range(0));
  const std::uint32_t p = 7;
  const auto alg = close_span(full_algebra_gens(p, n));
  const PMatrix b = random_matrix(rng, p, n, 0, 0);
  const DerivationMap d = ad_map(b);
  for (auto _ : state) benchmark::DoNotOptimize(solve_inner(d, alg));
}
BENCHMARK(bm_solve_inner)->Arg(2)->Arg(3);

void bm_mahler_from_samples(benchmark::State& state) {
  const std::uint32_t p = 5;
  std::vector<PadicScalar> samples;
  for (int x = 0; x <= 25; ++x) {
    PadicScalar v = PadicScalar::one(p, kPrec);
    const PadicScalar base = PadicScalar::from_integer(p, x, kPrec);
    for (std::uint32_t e = 0; e < p; ++e) v *= base;
    samples.push_back(std::move(v));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(MahlerSeries::from_samples(p, samples));
}
BENCHMARK(bm_mahler_from_samples);

}  // namespace

BENCHMARK_MAIN();
