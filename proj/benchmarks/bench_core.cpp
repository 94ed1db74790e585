#include <benchmark/benchmark.h>

#include "levito/bell_swap.hpp"
#include "levito/dynamics.hpp"
#include "levito/output_filter.hpp"

namespace {

// Dimensionless torsional system on the red sideband, ultrastrong coupling.
levito::LinearModel model(double nbar) { return levito::build_model(1.0, 0.4, 3e-9, nbar, 1.0, 5.0); }

void BM_SteadyState(benchmark::State& state) {
  const auto m = model(4.9e7);
  for (auto _ : state) benchmark::DoNotOptimize(levito::steady_state_cm(m));
}
BENCHMARK(BM_SteadyState);

void BM_OutputCM(benchmark::State& state) {
  const auto m = model(4.9e7);
  const double Gamma = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(levito::output_cm(m, Gamma));
}
BENCHMARK(BM_OutputCM)->Arg(1)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ConditionedCM(benchmark::State& state) {
  const auto out = levito::output_cm(model(0.0), 1.0);
  const auto joint = levito::joint_cm(out.raw, out.raw, levito::FilterKind::bs);
  const levito::SwapSetup setup;
  for (auto _ : state) benchmark::DoNotOptimize(levito::conditioned_cm(joint, setup));
}
BENCHMARK(BM_ConditionedCM);

void BM_ConditionedOracle(benchmark::State& state) {
  const auto out = levito::output_cm(model(0.0), 1.0);
  const auto joint = levito::joint_cm(out.raw, out.raw, levito::FilterKind::bs);
  const levito::SwapSetup setup;
  for (auto _ : state) benchmark::DoNotOptimize(levito::conditioned_cm_oracle(joint, setup));
}
BENCHMARK(BM_ConditionedOracle);

}  // namespace

BENCHMARK_MAIN();
