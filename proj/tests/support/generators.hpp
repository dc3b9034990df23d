#pragma once

// Deterministic generators shared by the property tests and the acceptance
// suite. Everything is seeded; a failing case reproduces from its seed.

#include <string>
#include <vector>

#include "aadg/audio/clip.hpp"
#include "aadg/plan/scene_plan.hpp"
#include "aadg/rng.hpp"

namespace testsupport {

inline const std::vector<std::string>& sound_vocab() {
    static const std::vector<std::string> vocab = {
        "steady rain on a tin roof",  "a kettle whistling",        "gravel crunching underfoot",
        "a church bell tolling",      "a cat meowing",             "waves breaking on rocks",
        "an old clock ticking",       "a lawn mower droning",      "geese honking overhead",
        "a basketball bouncing",      "a zipper opening",          "cutlery clinking on plates",
        "a motorbike accelerating",   "wind chimes ringing",       "a hand saw cutting wood",
        "a crowd applauding",         "a creaking rope swing",     "distant fireworks popping",
        "a vacuum cleaner humming",   "a horse trotting on stone",
    };
    return vocab;
}

inline aadg::plan::ScenePlan random_valid_plan(aadg::SplitMix64& rng, int min_components = 1,
                                               int max_components = 6) {
    using aadg::plan::ScenePlan;
    const auto& vocab = sound_vocab();
    const int n = min_components +
                  static_cast<int>(rng.below(static_cast<std::uint64_t>(max_components - min_components + 1)));

    ScenePlan plan;
    plan.summary = "A generated test scene.";
    plan.anomaly = "a test anomaly";
    plan.anomaly_rationale = "The event does not belong to the ambience.";

    // distinct descriptions via a shuffled vocabulary
    std::vector<std::size_t> pick(vocab.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (std::size_t i = pick.size(); i > 1; --i) std::swap(pick[i - 1], pick[rng.below(i)]);

    for (int i = 0; i < n; ++i) {
        aadg::plan::SoundComponent c;
        c.index = i;
        c.description = vocab[pick[static_cast<std::size_t>(i)]];
        c.is_anomaly = (i == 0);
        c.duration_s = 1.0 + static_cast<double>(rng.below(4)); // 1..4 s
        plan.components.push_back(std::move(c));
    }

    plan.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) plan.order[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = plan.order.size(); i > 1; --i)
        std::swap(plan.order[i - 1], plan.order[rng.below(i)]);

    static const char* kMerges[] = {"crossfade", "overlay", "fade_in", "fade_out"};
    for (int i = 0; i < n; ++i) plan.merge_types.push_back(kMerges[rng.below(4)]);
    return plan;
}

inline aadg::audio::AudioClip random_clip(aadg::SplitMix64& rng, int rate, std::size_t min_samples,
                                          std::size_t max_samples) {
    aadg::audio::AudioClip clip;
    clip.sample_rate = rate;
    const std::size_t n = min_samples + rng.below(max_samples - min_samples + 1);
    clip.samples.resize(n);
    for (auto& s : clip.samples) s = static_cast<float>(rng.uniform(-0.9, 0.9));
    return clip;
}

// Independent sample-count oracle for one merge step (the closed-form table).
struct StepLaw {
    std::size_t result_len;
    std::size_t start; // placement start in samples
};

inline StepLaw step_law(std::size_t la, std::size_t lb, std::size_t d_cfg_samples,
                        const std::string& merge) {
    if (la == 0) return {lb, 0};
    const std::size_t d = std::min({la, lb, d_cfg_samples});
    if (merge == "fade_in" || merge == "fade_out") return {la + lb, la};
    if (merge == "crossfade") return {la + lb - d, la - d};
    // overlay
    if (lb <= la) return {la, (la - lb) / 2};
    return {lb, 0};
}

} // namespace testsupport
