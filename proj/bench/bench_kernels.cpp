// OpenMP kernels against their single-threaded references.
// QVERIFY_THREADS caps the thread count.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qverify/adversary.hpp"
#include "qverify/protocol.hpp"
#include "qverify/util.hpp"

namespace {

using namespace qverify;

LandscapeOptions grid_of(benchmark::State& state) {
  LandscapeOptions opt;
  opt.alpha_points = static_cast<int>(state.range(0));
  opt.phi_points = static_cast<int>(state.range(0));
  opt.keep_grid = false;
  return opt;
}

void BM_landscape_parallel(benchmark::State& state) {
  const auto opt = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(landscape(std::numbers::pi / 8, opt).q_min);
}

void BM_landscape_serial(benchmark::State& state) {
  const auto opt = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(landscape_serial(std::numbers::pi / 8, opt).q_min);
}

const Strategy& bell() {
  static const Strategy s = bell_strategy();
  return s;
}

const DeviceModel& adversary() {
  static const DeviceModel d = DeviceModel::iid(worst_case_state(bell(), 0.1).sigma.matrix());
  return d;
}

void BM_power_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_power(bell(), adversary(), 100, state.range(0), 7).accepted);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_power_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_power_serial(bell(), adversary(), 100, state.range(0), 7).accepted);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_landscape_parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_landscape_serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_power_parallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_power_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  qverify::apply_thread_cap_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
