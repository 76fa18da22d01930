#include <benchmark/benchmark.h>

#include "wellposed/admissibility.hpp"
#include "wellposed/heat.hpp"
#include "wellposed/lax_phillips.hpp"

using namespace wellposed;

namespace {

SpectralSystem heat_system(long modes) {
  heat::HeatConfig cfg;
  cfg.modes = modes;
  return heat::build_heat_system(cfg);
}

void BM_MultiplierScan(benchmark::State& state) {
  SpectralSystem sys = heat_system(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(m13_sup_scan(sys, 100.0, 4001));
  }
}
BENCHMARK(BM_MultiplierScan)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ObservationGram(benchmark::State& state) {
  SpectralSystem sys = heat_system(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(observation_gram(sys, 1.0).constant);
  }
}
BENCHMARK(BM_ObservationGram)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_StateTrajectory(benchmark::State& state) {
  SpectralSystem sys = heat_system(state.range(0));
  const double dt = 1e-3;
  Signal u = Signal::sample(0.0, dt, 10001, 2, [](double r) {
    Eigen::VectorXd v(2);
    v << std::sin(r), std::cos(3.0 * r);
    return v;
  });
  SpectralVector x = SpectralVector::Ones(sys.modes());
  for (auto _ : state) {
    benchmark::DoNotOptimize(state_trajectory(sys, x, u, dt, 10000));
  }
}
BENCHMARK(BM_StateTrajectory)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_StepExtendedState(benchmark::State& state) {
  SpectralSystem sys = heat_system(64);
  const double dt = 1e-3;
  Signal u = Signal::sample(0.0, dt, 2001, 2, [](double r) {
    Eigen::VectorXd v(2);
    v << 1.0, r;
    return v;
  });
  ExtendedState xs = make_extended_state(sys, 2.0, SpectralVector::Ones(64), u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_extended_state(sys, 1.0, xs));
  }
}
BENCHMARK(BM_StepExtendedState)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
