#include <cmath>

#include <benchmark/benchmark.h>

#include "pclab/limit_laws.hpp"
#include "pclab/percolation.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/regular_tree.hpp"
#include "pclab/replicas.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/yule.hpp"

namespace {

double root_fraction(pclab::Stream& rng)
{
    const std::size_t n = 10000;
    const double p = 1.0 - 1.0 / std::log(static_cast<double>(n));
    return static_cast<double>(pclab::decompose(pclab::build_marked(n, p, rng)).root_cluster_size) / n;
}

void BM_BuildMarked(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    pclab::Stream rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::build_marked(n, 0.9, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildMarked)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_Decompose(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    pclab::Stream rng(2);
    const auto marked = pclab::build_marked(n, 0.9, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::decompose(marked));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_GermClock(benchmark::State& state)
{
    const auto spec = pclab::GermSpec::standalone(static_cast<std::size_t>(state.range(0)), 1.0);
    pclab::Stream rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::germ_delta(spec, rng, pclab::GermRoute::clock_cutoff));
    }
}
BENCHMARK(BM_GermClock)->Arg(10000)->Arg(1000000);

void BM_Pipeline(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    pclab::Stream rng(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::run_pipeline(n, 1.0, rng));
    }
}
BENCHMARK(BM_Pipeline)->Arg(100000)->Arg(1000000);

void BM_LdDiscrete(benchmark::State& state)
{
    pclab::Stream rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::sample_ld_discrete(static_cast<double>(state.range(0)), rng));
    }
}
BENCHMARK(BM_LdDiscrete)->Arg(1)->Arg(1000);

void BM_Theorem2(benchmark::State& state)
{
    pclab::RegularParams params;
    params.h = static_cast<std::size_t>(state.range(0));
    pclab::Stream rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::theorem2_sample(params, rng));
    }
}
BENCHMARK(BM_Theorem2)->Arg(256)->Arg(4096);

void BM_ReplicasSerial(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::run_replicas_serial(
            [](pclab::Stream& rng) { return std::vector<double>{root_fraction(rng)}; }, {"G"},
            static_cast<std::size_t>(state.range(0)), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReplicasSerial)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ReplicasParallel(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(pclab::run_replicas(
            [](pclab::Stream& rng) { return std::vector<double>{root_fraction(rng)}; }, {"G"},
            static_cast<std::size_t>(state.range(0)), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReplicasParallel)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
