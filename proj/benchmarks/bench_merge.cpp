#include <benchmark/benchmark.h>

#include "aadg/audio/merge.hpp"
#include "aadg/audio/ops.hpp"
#include "aadg/rng.hpp"

namespace {

aadg::audio::AudioClip noise_clip(std::uint64_t seed, double seconds, int rate = 16000) {
    aadg::SplitMix64 rng(seed);
    aadg::audio::AudioClip clip;
    clip.sample_rate = rate;
    clip.samples.resize(static_cast<std::size_t>(seconds * rate));
    for (auto& s : clip.samples) s = static_cast<float>(rng.uniform(-0.8, 0.8));
    return clip;
}

void BM_MergeStepCrossfade(benchmark::State& state) {
    auto base = noise_clip(1, static_cast<double>(state.range(0)));
    auto incoming = noise_clip(2, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto r = aadg::audio::merge_step(base, incoming, aadg::audio::MergeType::crossfade, {});
        benchmark::DoNotOptimize(r.mix.samples.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(base.samples.size() + incoming.samples.size()));
}
BENCHMARK(BM_MergeStepCrossfade)->Arg(5)->Arg(30);

void BM_MergeSequence(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    aadg::plan::ScenePlan plan;
    plan.summary = "s";
    plan.anomaly = "a";
    plan.anomaly_rationale = "r";
    std::vector<aadg::audio::AudioClip> clips;
    static const char* kMerges[] = {"crossfade", "overlay", "fade_in", "fade_out"};
    for (std::size_t i = 0; i < n; ++i) {
        aadg::plan::SoundComponent c;
        c.index = static_cast<int>(i);
        c.description = "component";
        c.duration_s = 5.0;
        plan.components.push_back(c);
        plan.order.push_back(static_cast<int>(i));
        plan.merge_types.push_back(kMerges[i % 4]);
        clips.push_back(noise_clip(i + 10, 5.0));
    }
    for (auto _ : state) {
        auto r = aadg::audio::merge_sequence(plan, clips, {});
        benchmark::DoNotOptimize(r.mix.samples.data());
    }
}
BENCHMARK(BM_MergeSequence)->Arg(2)->Arg(6);

void BM_Resample(benchmark::State& state) {
    auto clip = noise_clip(3, 10.0, 24000);
    for (auto _ : state) {
        auto out = aadg::audio::resample(clip, 16000);
        benchmark::DoNotOptimize(out.samples.data());
    }
}
BENCHMARK(BM_Resample);

} // namespace
