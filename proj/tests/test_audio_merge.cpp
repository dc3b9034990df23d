#include <doctest.h>

#include <cmath>

#include "aadg/audio/merge.hpp"
#include "aadg/audio/ops.hpp"
#include "aadg/errors.hpp"
#include "aadg/rng.hpp"
#include "support/generators.hpp"

using namespace aadg;
using namespace aadg::audio;

namespace {

AudioClip constant_clip(double value, double seconds, int rate = 16000) {
    AudioClip clip;
    clip.sample_rate = rate;
    clip.samples.assign(static_cast<std::size_t>(std::llround(seconds * rate)),
                        static_cast<float>(value));
    return clip;
}

} // namespace

TEST_SUITE_BEGIN("audio_merge");

TEST_CASE("fade_out append: 5 s + 5 s keeps 160000 samples, placed at (5, 10)") {
    auto base = constant_clip(0.3, 5.0);
    auto incoming = constant_clip(0.4, 5.0);
    auto r = merge_step(base, incoming, MergeType::fade_out, {});
    CHECK(r.mix.samples.size() == 160000);
    CHECK(r.placement.start_s == doctest::Approx(5.0));
    CHECK(r.placement.end_s == doctest::Approx(10.0));
    // ramp 1 -> 0 over the last second
    CHECK(std::fabs(r.mix.samples.back()) < 1e-6);
    CHECK(r.mix.samples[160000 - 16000 - 1] == doctest::Approx(0.4));
}

TEST_CASE("crossfade d=1: 5 s + 5 s gives 9 s, placed at (4, 9)") {
    auto base = constant_clip(0.3, 5.0);
    auto incoming = constant_clip(0.4, 5.0);
    auto r = merge_step(base, incoming, MergeType::crossfade, {});
    CHECK(r.mix.samples.size() == 144000); // A + B - d
    CHECK(r.placement.start_s == doctest::Approx(4.0));
    CHECK(r.placement.end_s == doctest::Approx(9.0));
}

TEST_CASE("overlay of a shorter clip is centered: 6 s + 2 s -> (2, 4)") {
    auto base = constant_clip(0.2, 6.0);
    auto incoming = constant_clip(0.1, 2.0);
    auto r = merge_step(base, incoming, MergeType::overlay, {});
    CHECK(r.mix.samples.size() == base.samples.size());
    CHECK(r.placement.start_s == doctest::Approx(2.0)); // (6-2)/2
    CHECK(r.placement.end_s == doctest::Approx(4.0));
    CHECK(r.mix.samples[3 * 16000] == doctest::Approx(0.3));
    CHECK(r.mix.samples[16000] == doctest::Approx(0.2));
}

TEST_CASE("overlay of a longer clip starts at zero and extends") {
    auto base = constant_clip(0.2, 2.0);
    auto incoming = constant_clip(0.1, 6.0);
    auto r = merge_step(base, incoming, MergeType::overlay, {});
    CHECK(r.mix.samples.size() == incoming.samples.size());
    CHECK(r.placement.start_s == doctest::Approx(0.0));
    CHECK(r.placement.end_s == doctest::Approx(6.0));
}

TEST_CASE("overlay rescales globally instead of clipping") {
    auto base = constant_clip(0.9, 2.0);
    auto incoming = constant_clip(0.9, 2.0);
    auto r = merge_step(base, incoming, MergeType::overlay, {});
    CHECK(r.rescale_factor == doctest::Approx(1.0 / 1.8));
    CHECK(peak(r.mix) <= 1.0 + 1e-9);
    // waveform shape preserved: still constant
    for (float s : r.mix.samples) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("equal-power crossfade holds two constant-0.5 clips at 0.5") {
    auto base = constant_clip(0.5, 3.0);
    auto incoming = constant_clip(0.5, 3.0);
    auto r = merge_step(base, incoming, MergeType::crossfade, {});
    for (std::size_t i = 2 * 16000; i < 3 * 16000; ++i) // the overlap window
        CHECK(std::fabs(r.mix.samples[i] - 0.5f) < 1e-3);
}

TEST_CASE("first step: incoming becomes the mix, fade_in still ramps") {
    AudioClip empty;
    empty.sample_rate = 16000;
    auto incoming = constant_clip(0.5, 2.0);

    auto plain = merge_step(empty, incoming, MergeType::overlay, {});
    CHECK(plain.mix.samples == incoming.samples);
    CHECK(plain.placement.start_s == doctest::Approx(0.0));
    CHECK(plain.placement.end_s == doctest::Approx(2.0));

    auto ramped = merge_step(empty, incoming, MergeType::fade_in, {});
    CHECK(ramped.mix.samples.size() == incoming.samples.size());
    CHECK(std::fabs(ramped.mix.samples[0]) < 1e-6);
    CHECK(ramped.mix.samples[16000 / 2] == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(ramped.mix.samples.back() == doctest::Approx(0.5));
}

TEST_CASE("merge_step refuses mixed sample rates and empty incoming") {
    auto base = constant_clip(0.1, 1.0, 16000);
    auto other = constant_clip(0.1, 1.0, 8000);
    CHECK_THROWS_AS(merge_step(base, other, MergeType::overlay, {}), SampleRateMismatch);
    AudioClip empty;
    empty.sample_rate = 16000;
    CHECK_THROWS_AS(merge_step(base, empty, MergeType::overlay, {}), std::invalid_argument);
}

TEST_CASE("length law holds for random (A, B, d, type) tuples") {
    SplitMix64 rng(2024);
    const int rate = 16000;
    static const char* kTypes[] = {"crossfade", "overlay", "fade_in", "fade_out"};
    for (int trial = 0; trial < 100; ++trial) {
        auto base = testsupport::random_clip(rng, rate, 1, 30000);
        auto incoming = testsupport::random_clip(rng, rate, 1, 30000);
        MergeParams params;
        params.fade_seconds = rng.uniform(0.0, 2.0);
        const char* type = kTypes[rng.below(4)];
        auto expected = testsupport::step_law(base.samples.size(), incoming.samples.size(),
                                              static_cast<std::size_t>(
                                                  std::llround(params.fade_seconds * rate)),
                                              type);
        auto r = merge_step(base, incoming, *merge_type_from_string(type), params);
        CHECK(r.mix.samples.size() == expected.result_len);
        CHECK(static_cast<std::size_t>(std::llround(r.placement.start_s * rate)) == expected.start);
    }
}

TEST_CASE("merge_step never exceeds unit magnitude on in-range inputs") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        auto base = testsupport::random_clip(rng, 16000, 100, 5000);
        auto incoming = testsupport::random_clip(rng, 16000, 100, 5000);
        auto type = static_cast<MergeType>(rng.below(4));
        auto r = merge_step(base, incoming, type, {});
        CHECK(peak(r.mix) <= 1.0 + 1e-6);
    }
}

TEST_CASE("merge_sequence: three-clip walk-through (fade_in, crossfade, overlay)") {
    plan::ScenePlan plan;
    plan.summary = "s";
    plan.anomaly = "a";
    plan.anomaly_rationale = "r";
    for (int i = 0; i < 3; ++i) {
        plan::SoundComponent c;
        c.index = i;
        c.description = "component " + std::to_string(i);
        c.duration_s = 5.0;
        plan.components.push_back(c);
        plan.order.push_back(i);
    }
    plan.merge_types = {"fade_in", "crossfade", "overlay"};

    std::vector<AudioClip> clips = {constant_clip(0.5, 5.0), constant_clip(0.4, 5.0),
                                    constant_clip(0.3, 5.0)};
    auto result = merge_sequence(plan, clips, {});

    CHECK(result.ledger.total_duration_s == doctest::Approx(9.0));
    REQUIRE(result.ledger.entries.size() == 3);
    // sorted starts: clip0 at 0, clip2 centered in 9 s -> 2, clip1 crossfaded at 4
    CHECK(result.ledger.entries[0].start_s == doctest::Approx(0.0));
    CHECK(result.ledger.entries[0].component_index == 0);
    CHECK(result.ledger.entries[1].start_s == doctest::Approx(2.0));
    CHECK(result.ledger.entries[1].component_index == 2);
    CHECK(result.ledger.entries[2].start_s == doctest::Approx(4.0));
    CHECK(result.ledger.entries[2].component_index == 1);
    // final mix normalized to -1 dBFS
    CHECK(peak(result.mix) == doctest::Approx(0.8912509381).epsilon(1e-6));
}

TEST_CASE("merge_sequence: single component ledger covers the whole mix") {
    SplitMix64 rng(5);
    auto plan = testsupport::random_valid_plan(rng, 1, 1);
    std::vector<AudioClip> clips = {constant_clip(
        0.4, plan.components[0].duration_s)};
    auto result = merge_sequence(plan, clips, {});
    REQUIRE(result.ledger.entries.size() == 1);
    CHECK(result.ledger.entries[0].start_s == doctest::Approx(0.0));
    CHECK(result.ledger.entries[0].end_s == doctest::Approx(result.ledger.total_duration_s));
}

TEST_CASE("merge_sequence guards: arity, rates, unknown merge") {
    SplitMix64 rng(6);
    auto plan = testsupport::random_valid_plan(rng, 2, 2);
    std::vector<AudioClip> clips = {constant_clip(0.2, 1.0)};
    CHECK_THROWS_AS(merge_sequence(plan, clips, {}), ArityMismatch);

    clips.push_back(constant_clip(0.2, 1.0, 8000));
    CHECK_THROWS_AS(merge_sequence(plan, clips, {}), SampleRateMismatch);

    clips[1] = constant_clip(0.2, 1.0);
    auto bad = plan;
    bad.merge_types[1] = "blend";
    CHECK_THROWS_AS(merge_sequence(bad, clips, {}), std::invalid_argument);
}

TEST_CASE("ledger coverage has no gaps (random plans)") {
    SplitMix64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        auto plan = testsupport::random_valid_plan(rng, 1, 6);
        std::vector<AudioClip> clips;
        for (const auto& c : plan.components) {
            auto clip = testsupport::random_clip(
                rng, 16000, static_cast<std::size_t>(c.duration_s * 16000),
                static_cast<std::size_t>(c.duration_s * 16000));
            clips.push_back(std::move(clip));
        }
        auto result = merge_sequence(plan, clips, {});

        REQUIRE(result.ledger.entries.size() == plan.components.size());
        double covered = 0.0;
        double prev_start = -1.0;
        for (const auto& e : result.ledger.entries) {
            CHECK(e.start_s >= prev_start); // sorted
            prev_start = e.start_s;
            CHECK(e.start_s <= covered + 1e-9); // no gap
            covered = std::max(covered, e.end_s);
            CHECK(e.start_s < e.end_s);
            CHECK(e.end_s <= result.ledger.total_duration_s + 1e-6);
        }
        CHECK(covered == doctest::Approx(result.ledger.total_duration_s).epsilon(1e-9));
    }
}

TEST_CASE("merge_sequence is bit-reproducible") {
    SplitMix64 rng(31);
    auto plan = testsupport::random_valid_plan(rng, 3, 5);
    std::vector<AudioClip> clips;
    for (const auto& c : plan.components)
        clips.push_back(testsupport::random_clip(rng, 16000,
                                                 static_cast<std::size_t>(c.duration_s * 16000),
                                                 static_cast<std::size_t>(c.duration_s * 16000)));
    auto a = merge_sequence(plan, clips, {});
    auto b = merge_sequence(plan, clips, {});
    CHECK(a.mix.samples == b.mix.samples);
    CHECK(a.ledger.total_duration_s == b.ledger.total_duration_s);
}

TEST_SUITE_END();
