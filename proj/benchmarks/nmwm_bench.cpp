#include <benchmark/benchmark.h>

#include "nmwm/attacks.hpp"
#include "nmwm/codec.hpp"
#include "nmwm/eigen.hpp"
#include "nmwm/synth.hpp"

namespace {

using namespace nmwm;

RealMatrix image(std::size_t n, std::uint64_t seed) { return to_real(natural_image(n, n, seed)); }

void BM_EigSym(benchmark::State& state)
{
    const RealMatrix s = symmetric_part(image(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state) benchmark::DoNotOptimize(eig_sym(s));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigSym)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_EigSkew(benchmark::State& state)
{
    const RealMatrix c = skew_part(image(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state) benchmark::DoNotOptimize(eig_skew(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigSkew)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond)->Complexity();

void BM_EigvalsSkew(benchmark::State& state)
{
    const RealMatrix c = skew_part(image(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state) benchmark::DoNotOptimize(eigvals_skew(c));
}
BENCHMARK(BM_EigvalsSkew)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Svd(benchmark::State& state)
{
    const RealMatrix a = image(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(svd(a));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond)->Complexity();

// Embedding with cached decompositions: the cost of one bench cell.
void BM_EmbedCached(benchmark::State& state)
{
    const auto method = static_cast<Method>(state.range(0));
    SpectralEmbedder e(image(128, 1), to_real(emblem_image(32, 2)));
    e.embed(method, 1.0);
    double alpha = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.embed(method, alpha));
        alpha += 1e-3;
    }
}
BENCHMARK(BM_EmbedCached)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Extract(benchmark::State& state)
{
    const auto method = static_cast<Method>(state.range(0));
    const EmbedResult r = SpectralEmbedder(image(128, 1), to_real(emblem_image(32, 2))).embed(method, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(extract(r.watermarked, r.key));
}
BENCHMARK(BM_Extract)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Attack(benchmark::State& state)
{
    const ImageU8 img = natural_image(256, 256, 3);
    AttackSpec spec;
    spec.kind = static_cast<AttackKind>(state.range(0));
    spec.intermediate_size = 192;
    spec.seed = 1;
    state.SetLabel(attack_name(spec.kind));
    for (auto _ : state) benchmark::DoNotOptimize(apply_attack(img, spec));
}
BENCHMARK(BM_Attack)->DenseRange(0, 8)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
