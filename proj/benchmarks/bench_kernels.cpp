#include <benchmark/benchmark.h>

#include "sepgamma/crossnorm.hpp"
#include "sepgamma/random.hpp"

using namespace sepgamma;

static void BM_TraceNorm(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  Rng rng(1);
  const ComplexMatrix m = ginibre(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(m));
}
BENCHMARK(BM_TraceNorm)->Arg(2)->Arg(3)->Arg(4)->Arg(9)->Arg(16);

static void BM_Realignment(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  Rng rng(2);
  const ComplexMatrix rho = random_density_matrix(d * d, 0, rng);
  const BipartiteDims dims(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(realignment(rho, dims));
}
BENCHMARK(BM_Realignment)->Arg(2)->Arg(3)->Arg(4);

static void BM_RealignmentBound(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  RandomSpec spec;
  spec.seed = 3;
  const DensityOperator rho = random_state(spec, BipartiteDims(d, d)).state;
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_realignment(rho).value);
}
BENCHMARK(BM_RealignmentBound)->Arg(2)->Arg(3)->Arg(4);

static void BM_WitnessBound(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  RandomSpec spec;
  spec.seed = 4;
  const DensityOperator rho = random_state(spec, BipartiteDims(d, d)).state;
  const SearchConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_witness(rho, config).value);
}
BENCHMARK(BM_WitnessBound)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

static void BM_UpperSearchBell(benchmark::State& state) {
  const DensityOperator bell = bell_state();
  const SearchConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(upper_bound_search(bell, config).cost);
}
BENCHMARK(BM_UpperSearchBell)->Unit(benchmark::kMillisecond);

static void BM_CertifySeparable(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  RandomSpec spec;
  spec.seed = 5;
  spec.kind = RandomKind::Separable;
  const DensityOperator rho = random_state(spec, BipartiteDims(d, d)).state;
  const SearchConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(certify(rho, config).verdict);
}
BENCHMARK(BM_CertifySeparable)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
