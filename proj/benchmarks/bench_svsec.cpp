#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "svsec/classify.hpp"
#include "svsec/cumulants.hpp"
#include "svsec/normality.hpp"
#include "svsec/singular.hpp"

using namespace svsec;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

void BM_Hnf(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const IntMatrix m = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_Hnf)->Arg(4)->Arg(8)->Arg(16);

void BM_Snf(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const IntMatrix m = random_matrix(rng, static_cast<std::size_t>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8);

void BM_BuildPolytope(benchmark::State& state) {
  const SVParams p({1, 2, 3, 4}, {2, 2, 2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(build_polytope(p));
}
BENCHMARK(BM_BuildPolytope)->Unit(benchmark::kMillisecond);

void BM_Analysis(benchmark::State& state) {
  const auto poly = build_polytope(SVParams({1, 2, 3, 4}, {2, 2, 2, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(Analysis(poly));
}
BENCHMARK(BM_Analysis)->Unit(benchmark::kMillisecond);

void BM_ClassifyAndSingular(benchmark::State& state) {
  const SVParams p({1, 1, 2, 2}, {2, 2, 2, 2});
  const Analysis an(build_polytope(p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_check(an, p));
    benchmark::DoNotOptimize(singular_report(an, p));
  }
}
BENCHMARK(BM_ClassifyAndSingular)->Unit(benchmark::kMillisecond);

void BM_Normality(benchmark::State& state) {
  const auto poly = build_polytope(SVParams({1, 2, 2}, {3, 2, 2}));
  for (auto _ : state) benchmark::DoNotOptimize(check_normality(poly, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Normality)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SecantZ(benchmark::State& state) {
  const auto c = sv_complex(SVParams({2, 2}, {2, static_cast<int>(state.range(0))}));
  for (auto _ : state) benchmark::DoNotOptimize(secant_z(c));
}
BENCHMARK(BM_SecantZ)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ToricBinomials(benchmark::State& state) {
  std::istringstream in("g1: 1 2\ng2: 2 3 4\n");
  const auto c = parse_complex(in);
  for (auto _ : state) benchmark::DoNotOptimize(toric_binomials(c, 4));
}
BENCHMARK(BM_ToricBinomials)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
