#include <doctest.h>

#include <cmath>

#include "aadg/audio/ops.hpp"
#include "aadg/rng.hpp"
#include "support/generators.hpp"

using namespace aadg;
using namespace aadg::audio;

TEST_SUITE_BEGIN("audio_ops");

TEST_CASE("resample identity is bit-exact") {
    SplitMix64 rng(3);
    auto clip = testsupport::random_clip(rng, 16000, 1000, 2000);
    auto same = resample(clip, 16000);
    CHECK(same.samples == clip.samples);
    CHECK(same.sample_rate == 16000);
}

TEST_CASE("resample length law: round(n * target/source)") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(80000, 0.1f);
    CHECK(resample(clip, 32000).samples.size() == 160000);
    CHECK(resample(clip, 8000).samples.size() == 40000);
    CHECK(resample(clip, 44100).samples.size() ==
          static_cast<std::size_t>(std::llround(80000.0 * 44100.0 / 16000.0)));
}

TEST_CASE("resampling a constant stays constant") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(16000, 0.25f);
    for (int rate : {8000, 22050, 44100, 48000}) {
        auto out = resample(clip, rate);
        for (float s : out.samples) CHECK(std::fabs(s - 0.25f) < 1e-7);
    }
}

TEST_CASE("resample rejects a non-positive rate") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(10, 0.0f);
    CHECK_THROWS_AS(resample(clip, 0), std::invalid_argument);
}

TEST_CASE("normalize hits the requested peak") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(1000, 0.0f);
    clip.samples[500] = 0.5f;

    auto out = normalize(clip, -3.0);
    CHECK(peak(out) == doctest::Approx(0.7079458).epsilon(1e-6)); // 10^(-3/20)

    AudioClip unit;
    unit.sample_rate = 16000;
    unit.samples.assign(100, 0.0f);
    unit.samples[0] = 1.0f;
    auto same = normalize(unit, 0.0);
    CHECK(std::fabs(peak(same) - 1.0) < 1e-6);
}

TEST_CASE("normalize leaves silent clips unchanged") {
    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.assign(100, 0.0f);
    auto out = normalize(clip, -3.0);
    CHECK(out.samples == clip.samples);
}

TEST_CASE("normalize preserves waveform shape (single scalar gain)") {
    SplitMix64 rng(17);
    auto clip = testsupport::random_clip(rng, 16000, 500, 800);
    auto out = normalize(clip, -6.0);
    REQUIRE(out.samples.size() == clip.samples.size());
    const double gain = dbfs_to_peak(-6.0) / peak(clip);
    for (std::size_t i = 0; i < clip.samples.size(); ++i)
        CHECK(out.samples[i] == doctest::Approx(clip.samples[i] * gain).epsilon(1e-6));
}

TEST_CASE("dbfs conversions") {
    CHECK(dbfs_to_peak(0.0) == doctest::Approx(1.0));
    CHECK(dbfs_to_peak(-1.0) == doctest::Approx(0.8912509381337456).epsilon(1e-12));
    CHECK(dbfs_to_peak(-3.0) == doctest::Approx(0.7079457843841379).epsilon(1e-12));
}

TEST_SUITE_END();
