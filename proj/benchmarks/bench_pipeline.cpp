#include <benchmark/benchmark.h>

#include "osofdma/availability.hpp"
#include "osofdma/pu_dynamics.hpp"
#include "osofdma/scenarios.hpp"
#include "osofdma/simulator.hpp"
#include "osofdma/throughput.hpp"

namespace {

using namespace osofdma;

ValidatedConfig fig3(DesignOption opt, int npu_cap) {
  return validate_config(builtin("fig3-npu").at(npu_cap), opt);
}

void BM_PuKernel(benchmark::State& state) {
  const auto vc = fig3(DesignOption::s0n1b1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_pu_kernel(vc));
  state.SetLabel(std::to_string(vc.pu_states().size()) + " states");
}
BENCHMARK(BM_PuKernel)->Arg(2)->Arg(10);

void BM_Availability(benchmark::State& state) {
  const auto opt = all_design_options[static_cast<std::size_t>(state.range(0))];
  const auto vc = fig3(opt, 10);
  for (auto _ : state) benchmark::DoNotOptimize(AvailabilityModel(vc));
  state.SetLabel(std::string(to_string(opt)));
}
BENCHMARK(BM_Availability)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Throughput(benchmark::State& state) {
  const auto opt = all_design_options[static_cast<std::size_t>(state.range(0))];
  const auto vc = fig3(opt, 10);
  for (auto _ : state) benchmark::DoNotOptimize(throughput(vc));
  state.SetLabel(std::string(to_string(opt)));
}
BENCHMARK(BM_Throughput)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SimulatorFrames(benchmark::State& state) {
  const auto opt = all_design_options[static_cast<std::size_t>(state.range(0))];
  FrameSimulator sim(fig3(opt, 10), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(std::string(to_string(opt)));
}
BENCHMARK(BM_SimulatorFrames)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
