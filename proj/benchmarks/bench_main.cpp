#include <benchmark/benchmark.h>

#include "symq/adversary.hpp"
#include "symq/measures.hpp"
#include "symq/qcount.hpp"
#include "symq/spectral.hpp"
#include "symq/verify.hpp"

using namespace symq;

static void BM_LambdaThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BooleanFunction f = BooleanFunction::from_profile(make_threshold(n, n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_of(f));
}
BENCHMARK(BM_LambdaThreshold)->DenseRange(8, 16, 2)->Unit(benchmark::kMillisecond);

static void BM_AggregateTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BooleanFunction f = BooleanFunction::from_profile(extremal_G(n));
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(f));
}
BENCHMARK(BM_AggregateTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_AggregateSymmetric(benchmark::State& state) {
  const SymmetricProfile g = make_gapmaj(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_symmetric(g));
}
BENCHMARK(BM_AggregateSymmetric)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_Scan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_symmetric(n, {ScanCheck::C2s, ScanCheck::Bs32}));
}
BENCHMARK(BM_Scan)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ExplicitCertifier(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExplicitSchemeCertifier certifier(n);
  const SymmetricProfile f = make_threshold(n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(certifier.check(f, SchemeMode::MM));
}
BENCHMARK(BM_ExplicitCertifier)->Arg(8)->Arg(12);

static void BM_RelationalBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(relational_bound(gapmaj_relation(n)));
}
BENCHMARK(BM_RelationalBound)->Arg(64)->Arg(1024);

static void BM_PhaseDistribution(benchmark::State& state) {
  const auto M = static_cast<int>(state.range(0));
  const double theta = grover_angle(144, 256);
  for (auto _ : state) benchmark::DoNotOptimize(phase_distribution(theta, M, 256));
}
BENCHMARK(BM_PhaseDistribution)->Arg(64)->Arg(1024);

static void BM_DecideGapMaj(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const std::int64_t t = n / 2 + exact_sqrt(n);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decide_gapmaj(n, t, 1.0 / 3, derive_seed(7, i++)));
}
BENCHMARK(BM_DecideGapMaj)->Arg(1024)->Arg(4096);
BENCHMARK_MAIN();
