#include <specon/allocation.hpp>
#include <specon/config.hpp>
#include <specon/harness.hpp>
#include <specon/simulation.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>
#include <vector>

using namespace specon;

namespace {

const std::filesystem::path kScenarios{SPECON_SCENARIO_DIR};

void BM_AllocateCpu(benchmark::State& state) {
    std::vector<double> demand;
    for (int i = 0; i < state.range(0); ++i) {
        demand.push_back(1.0 + (i % 7));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(allocate_cpu(12.8, demand));
    }
}
BENCHMARK(BM_AllocateCpu)->Arg(4)->Arg(16)->Arg(64);

void BM_ReferenceRun(benchmark::State& state) {
    auto cfg = load_config(kScenarios / "fixed_vae.json");
    cfg.policy = state.range(0) == 0 ? Policy::SpeCon : Policy::DS;
    auto setup = to_setup(cfg);
    for (auto _ : state) {
        auto rec = Simulation(setup).run();
        benchmark::DoNotOptimize(rec.finished);
    }
}
BENCHMARK(BM_ReferenceRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Compare(benchmark::State& state) {
    auto cfg = load_config(kScenarios / "random_mixed.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare(cfg).comparison.overall);
    }
}
BENCHMARK(BM_Compare)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
