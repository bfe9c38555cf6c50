#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "packlim/constants.hpp"
#include "packlim/massdist.hpp"
#include "packlim/packing.hpp"

using namespace packlim;

namespace {

void BM_GreedyPack(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::vector<double> pts(state.range(0));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& p : pts) p = u(rng);
    std::sort(pts.begin(), pts.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_pack(pts, 1.0 / double(state.range(0)), 0.0).count);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyPack)->Range(1 << 10, 1 << 20);

void BM_PackCutoutPower(benchmark::State& state) {
    auto seq = GapSequence::power_law(1.0, 0.5);
    CutOutSet gamma(seq);
    double eps = std::pow(10.0, -double(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(pack_cutout(gamma, eps, 0.5).count);
}
BENCHMARK(BM_PackCutoutPower)->Arg(2)->Arg(3)->Arg(4);

void BM_StreamCantor(benchmark::State& state) {
    auto s = GapSequence::block_geometric(1.0 / 3.0, 2, 1.0);
    int n = int(state.range(0));
    double eps = std::pow(3.0, 1 - n);
    std::uint64_t limit = s.tail_cutoff(eps) + 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(stream_cutout_count(s, eps, limit));
}
BENCHMARK(BM_StreamCantor)->Arg(10)->Arg(15)->Arg(20);

void BM_PackingSeries(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(packing_series(0.5, 1e-10).value);
}
BENCHMARK(BM_PackingSeries);

void BM_WindowSum(benchmark::State& state) {
    auto seq = GapSequence::power_law(1.0, 0.6);
    std::uint64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(seq.window_sum(n, 1 << 12));
        n = (n * 2862933555777941757ull + 3037000493ull) % 100000000 + 1;
    }
}
BENCHMARK(BM_WindowSum);

void BM_ExactCover(benchmark::State& state) {
    std::mt19937_64 rng(3);
    MassInstance inst;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < 14; ++i) inst.weights.push_back(u(rng));
    std::sort(inst.weights.begin(), inst.weights.end(), std::greater<double>());
    inst.epsilon = 0.4;
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_cover_count(inst, TailMode::as_item));
}
BENCHMARK(BM_ExactCover);

}  // namespace

BENCHMARK_MAIN();
