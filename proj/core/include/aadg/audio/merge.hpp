#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aadg/audio/clip.hpp"
#include "aadg/plan/scene_plan.hpp"

namespace aadg::audio {

enum class MergeType { crossfade, overlay, fade_in, fade_out };

std::optional<MergeType> merge_type_from_string(std::string_view name);
std::string_view to_string(MergeType type);

struct MergeParams {
    double fade_seconds = 1.0;     // ramp/overlap budget; clamped per step
    double final_peak_dbfs = -1.0; // merge_sequence output level
};

struct Placement {
    double start_s = 0.0;
    double end_s = 0.0;
};

struct MergeStepResult {
    AudioClip mix;
    Placement placement;        // where the incoming clip sits in the new mix
    double rescale_factor = 1.0; // applied to the whole mix when overlay clipped
};

// One fold step. Let A/B be base/incoming lengths and d the fade budget
// clamped to min(A, B, fade_seconds):
//   fade_in   append, gain 0->1 over the first d of incoming; length A+B
//   fade_out  append, gain 1->0 over the last d of incoming;  length A+B
//   crossfade last d of base overlaps first d of incoming with complementary
//             cos^2/sin^2 quarter-cycle gains (sums to 1);     length A+B-d
//   overlay   B<=A sums incoming centered on base (length A); B>A starts at 0
//             (length B); rescales the mix by 1/peak if the sum clips
// First step (empty base): incoming becomes the mix at t=0; fade_in still
// ramps its head (over min(B, fade_seconds)); other types place it plainly.
// All boundary arithmetic is sample-exact.
MergeStepResult merge_step(const AudioClip& base, const AudioClip& incoming, MergeType merge,
                           const MergeParams& params);

struct LedgerEntry {
    int component_index = 0;
    double start_s = 0.0;
    double end_s = 0.0;
};

// One entry per plan component, sorted by start time; the entry intervals
// cover [0, total_duration_s] with no gaps.
struct MergeLedger {
    std::vector<LedgerEntry> entries;
    double total_duration_s = 0.0;
};

struct MergeResult {
    AudioClip mix;
    MergeLedger ledger;
    std::vector<double> step_rescale_factors; // one per fold step, 1.0 when untouched
};

// Folds merge_step over plan.order; merge_types[i] governs how the i-th
// ordered component enters the running mix. The final mix is normalized to
// params.final_peak_dbfs. Clips must share one sample rate; clips.size()
// must equal the component count.
MergeResult merge_sequence(const plan::ScenePlan& plan, const std::vector<AudioClip>& clips,
                           const MergeParams& params);

} // namespace aadg::audio
