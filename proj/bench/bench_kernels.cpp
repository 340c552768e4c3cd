// Serial reference routes against the parallel kernels.
//   ./sdn_bench --benchmark_filter=Neighbors

#include <benchmark/benchmark.h>

#include "sdn/graph.hpp"
#include "sdn/wenum.hpp"

using namespace sdn;

namespace {

int threads() { return ExecContext::hardware().threads; }

void NeighborsScanSerial(benchmark::State& st) {
    const LinearCode c = seed_code(Family::TypeIII, 8);
    for (auto _ : st) benchmark::DoNotOptimize(distinct_neighbors_scan(c, Family::TypeIII, ExecContext::serial()));
}

void NeighborsScanParallel(benchmark::State& st) {
    const LinearCode c = seed_code(Family::TypeIII, 8);
    for (auto _ : st) benchmark::DoNotOptimize(distinct_neighbors_scan(c, Family::TypeIII, ExecContext{threads()}));
}

void NeighborsHyperplane(benchmark::State& st) {
    const LinearCode c = seed_code(Family::TypeIII, 8);
    for (auto _ : st) benchmark::DoNotOptimize(distinct_neighbors(c, Family::TypeIII, ExecContext{threads()}));
}

void WeightsReference(benchmark::State& st) {
    const LinearCode c = standard_code(StandardCode::DnPlus, 40);
    for (auto _ : st) benchmark::DoNotOptimize(weight_distribution_reference(c));
}

void WeightsParallel(benchmark::State& st) {
    const LinearCode c = standard_code(StandardCode::DnPlus, 40);
    for (auto _ : st) benchmark::DoNotOptimize(weight_distribution(c, ExecContext{threads()}));
}

void EnumeratorReference(benchmark::State& st) {
    const LinearCode c = standard_code(StandardCode::DnPlus, 16);
    for (auto _ : st) benchmark::DoNotOptimize(genus_enumerator_reference(c, 2));
}

void EnumeratorBruteforce(benchmark::State& st) {
    const LinearCode c = standard_code(StandardCode::DnPlus, 16);
    for (auto _ : st) benchmark::DoNotOptimize(genus_enumerator_bruteforce(c, 2, ExecContext{threads()}));
}

void EnumeratorOrbits(benchmark::State& st) {
    const LinearCode c = standard_code(StandardCode::DnPlus, 16);
    for (auto _ : st) benchmark::DoNotOptimize(genus_enumerator(c, 2, ExecContext{threads()}));
}

void GraphBuild(benchmark::State& st) {
    const LinearCode c = seed_code(Family::TypeIV, 6);
    for (auto _ : st)
        benchmark::DoNotOptimize(build_graph(c, Family::TypeIV, ExecContext{static_cast<int>(st.range(0))}));
}

}  // namespace

BENCHMARK(NeighborsScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(NeighborsScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(NeighborsHyperplane)->Unit(benchmark::kMicrosecond);
BENCHMARK(WeightsReference)->Unit(benchmark::kMillisecond);
BENCHMARK(WeightsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(EnumeratorReference)->Unit(benchmark::kMillisecond);
BENCHMARK(EnumeratorBruteforce)->Unit(benchmark::kMillisecond);
BENCHMARK(EnumeratorOrbits)->Unit(benchmark::kMillisecond);
BENCHMARK(GraphBuild)->Arg(1)->Arg(ExecContext::hardware().threads)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
