// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP kernels. Both paths produce identical results;
// only wall time differs.

#include "cbap/batch.hpp"
#include "cbap/experiments.hpp"
#include "cbap/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

using cbap::Execution;

std::vector<cbap::SimJob> make_jobs(int n, std::uint64_t slots)
{
    std::vector<cbap::SimJob> jobs;
    for (std::uint64_t s = 1; s <= 16; ++s)
        jobs.push_back({n, cbap::derive_seed(7, s), cbap::SlotBudget{slots}});
    return jobs;
}

void simulate(benchmark::State& state, Execution exec)
{
    const cbap::MacParams mac;
    const auto slots = cbap::slot_durations(cbap::TimingParams{});
    const auto jobs = make_jobs(static_cast<int>(state.range(0)), 200'000);
    for (auto _ : state) {
        auto out = cbap::simulate_batch(jobs, mac, slots, cbap::SimOptions{}, exec);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()) * 200'000);
}

void BM_SimulateSerial(benchmark::State& state) { simulate(state, Execution::serial); }
void BM_SimulateParallel(benchmark::State& state) { simulate(state, Execution::parallel); }

void compare(benchmark::State& state, Execution exec)
{
    auto cfg = cbap::table1_config();
    cfg.seeds.resize(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto report = cbap::run_comparison(cfg, exec);
        benchmark::DoNotOptimize(report.rows.data());
    }
}

void BM_CompareSerial(benchmark::State& state) { compare(state, Execution::serial); }
void BM_CompareParallel(benchmark::State& state) { compare(state, Execution::parallel); }

} // namespace

BENCHMARK(BM_SimulateSerial)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateParallel)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompareSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CompareParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
