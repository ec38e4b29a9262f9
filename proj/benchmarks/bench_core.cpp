#include <benchmark/benchmark.h>

#include "towtrack/cbf.hpp"
#include "towtrack/harness.hpp"
#include "towtrack/qp.hpp"
#include "towtrack/transforms.hpp"
#include "towtrack/vessel.hpp"

using namespace towtrack;

namespace {

const VesselParams kParams{};
const VesselState kState{90.0, 25.0, 0.5, 4.8, 0.3, -0.04};
const ControlInput kTau{4.8e5, -4.2e5};

void BM_EvalDynamics(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_dynamics(kState, kTau, kParams));
}
BENCHMARK(BM_EvalDynamics);

void BM_Rk4Step(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(step_rk4(kState, kTau, kParams, 0.01));
}
BENCHMARK(BM_Rk4Step);

void BM_PolarBundle(benchmark::State& state) {
    const ReferencePoint ref = reference_at(10.0, towing_circle_scenario().trajectory);
    const StateDerivative d = eval_dynamics(kState, kTau, kParams);
    const Drift dr = drift_forces(kState, kParams);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            polar_bundle(kState, ref, dr, d.nu_dot(), {0.01, -0.02, 0.0}, kParams));
}
BENCHMARK(BM_PolarBundle);

void BM_QpSolveFeasible(benchmark::State& state) {
    const std::array<std::array<double, 2>, 2> rows{{{0.4, -0.6}, {-1.0, 0.0}}};
    const std::array<double, 2> rhs{-0.3, 1.2};
    for (auto _ : state) benchmark::DoNotOptimize(qp::solve(rows, rhs));
}
BENCHMARK(BM_QpSolveFeasible);

void BM_QpSolveRelaxed(benchmark::State& state) {
    const std::array<std::array<double, 2>, 2> rows{{{1.0, 0.0}, {-1.0, 0.0}}};
    const std::array<double, 2> rhs{-3.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(qp::solve(rows, rhs));
}
BENCHMARK(BM_QpSolveRelaxed);

void BM_SimulateSecond(benchmark::State& state) {
    ScenarioConfig cfg = towing_circle_scenario();
    cfg.duration = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg));
}
BENCHMARK(BM_SimulateSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
