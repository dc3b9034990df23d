#include <benchmark/benchmark.h>

#include "aadg/audio/wav.hpp"
#include "aadg/rng.hpp"

namespace {

aadg::audio::AudioClip noise_clip(double seconds) {
    aadg::SplitMix64 rng(7);
    aadg::audio::AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.resize(static_cast<std::size_t>(seconds * 16000));
    for (auto& s : clip.samples) s = static_cast<float>(rng.uniform(-0.9, 0.9));
    return clip;
}

void BM_WavEncodePcm16(benchmark::State& state) {
    auto clip = noise_clip(10.0);
    for (auto _ : state) benchmark::DoNotOptimize(aadg::audio::wav_bytes(clip, aadg::audio::WavEncoding::pcm16).data());
}
BENCHMARK(BM_WavEncodePcm16);

void BM_WavDecodeFloat32(benchmark::State& state) {
    auto bytes = aadg::audio::wav_bytes(noise_clip(10.0), aadg::audio::WavEncoding::float32);
    for (auto _ : state) benchmark::DoNotOptimize(aadg::audio::read_wav_bytes(bytes).samples.data());
}
BENCHMARK(BM_WavDecodeFloat32);

} // namespace
