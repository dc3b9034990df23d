#include <benchmark/benchmark.h>

#include "aadg/adapters/stubs.hpp"
#include "aadg/rng.hpp"
#include "aadg/verify/verify.hpp"

namespace {

void BM_CosineSimilarity(benchmark::State& state) {
    aadg::SplitMix64 rng(5);
    aadg::adapters::EmbeddingVector a, b;
    const int dim = static_cast<int>(state.range(0));
    a.dimension = b.dimension = dim;
    for (int i = 0; i < dim; ++i) {
        a.values.push_back(static_cast<float>(rng.uniform(-1, 1)));
        b.values.push_back(static_cast<float>(rng.uniform(-1, 1)));
    }
    for (auto _ : state) benchmark::DoNotOptimize(aadg::verify::cosine_similarity(a, b));
}
BENCHMARK(BM_CosineSimilarity)->Arg(768)->Arg(1024);

void BM_StubEmbedAudio(benchmark::State& state) {
    aadg::adapters::StubTextToAudio tta(16000);
    aadg::adapters::StubEmbedding embed(1024);
    auto clip = tta.synthesize({"steady rain on a tin roof", 5.0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(embed.embed_audio(clip).values.data());
}
BENCHMARK(BM_StubEmbedAudio);

void BM_StubSynthesize(benchmark::State& state) {
    aadg::adapters::StubTextToAudio tta(16000);
    for (auto _ : state)
        benchmark::DoNotOptimize(tta.synthesize({"steady rain on a tin roof", 5.0, 1}).samples.data());
}
BENCHMARK(BM_StubSynthesize);

} // namespace
