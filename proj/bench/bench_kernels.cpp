// Serial reference vs OpenMP grid kernels.

#include <benchmark/benchmark.h>

#include "qbounds/sweep.hpp"

using namespace qbounds;

namespace {

SweepConfig fig1_config() {
    SweepConfig cfg;
    cfg.alpha_list = {0.0, 0.5, 1.0, 2.0};
    cfg.t_steps = 20000;
    return cfg;
}

SweepConfig audit_config() {
    SweepConfig cfg;
    cfg.alpha_list = {0.0, 0.5, 1.0, 1.5};
    cfg.t_steps = 64;
    cfg.dim = 48;
    return cfg;
}

void BM_fig1_serial(benchmark::State &state) {
    const auto cfg = fig1_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(fig1_rows_serial(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.alpha_list.size() * cfg.t_steps);
}

void BM_fig1_parallel(benchmark::State &state) {
    const auto cfg = fig1_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(fig1_rows_parallel(cfg, static_cast<int>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * cfg.alpha_list.size() * cfg.t_steps);
}

void BM_audit_serial(benchmark::State &state) {
    const auto cfg = audit_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(audit_rows_serial(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.alpha_list.size() * cfg.t_steps);
}

void BM_audit_parallel(benchmark::State &state) {
    const auto cfg = audit_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(audit_rows_parallel(cfg, static_cast<int>(state.range(0))));
    state.SetItemsProcessed(state.iterations() * cfg.alpha_list.size() * cfg.t_steps);
}

} // namespace

BENCHMARK(BM_fig1_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fig1_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_audit_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_audit_parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
