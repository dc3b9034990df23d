#include "aadg/audio/merge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aadg/audio/ops.hpp"
#include "aadg/errors.hpp"

namespace aadg::audio {

std::optional<MergeType> merge_type_from_string(std::string_view name) {
    if (name == "crossfade") return MergeType::crossfade;
    if (name == "overlay") return MergeType::overlay;
    if (name == "fade_in") return MergeType::fade_in;
    if (name == "fade_out") return MergeType::fade_out;
    return std::nullopt;
}

std::string_view to_string(MergeType type) {
    switch (type) {
    case MergeType::crossfade: return "crossfade";
    case MergeType::overlay: return "overlay";
    case MergeType::fade_in: return "fade_in";
    case MergeType::fade_out: return "fade_out";
    }
    return "?";
}

namespace {

std::size_t fade_samples(double fade_seconds, int rate) {
    if (fade_seconds <= 0.0) return 0;
    return static_cast<std::size_t>(std::llround(fade_seconds * rate));
}

void ramp_up(std::vector<float>& s, std::size_t begin, std::size_t d) {
    if (d == 0) return;
    const double k = 1.0 / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i)
        s[begin + i] = static_cast<float>(s[begin + i] * (static_cast<double>(i) * k));
}

void ramp_down_tail(std::vector<float>& s, std::size_t d) {
    if (d == 0) return;
    const double k = 1.0 / static_cast<double>(d);
    const std::size_t begin = s.size() - d;
    for (std::size_t i = 0; i < d; ++i)
        s[begin + i] = static_cast<float>(s[begin + i] * (static_cast<double>(d - 1 - i) * k));
}

} // namespace

MergeStepResult merge_step(const AudioClip& base, const AudioClip& incoming, MergeType merge,
                           const MergeParams& params) {
    if (incoming.empty()) throw std::invalid_argument("merge_step: incoming clip is empty");
    if (!base.empty() && base.sample_rate != incoming.sample_rate)
        throw SampleRateMismatch("merge_step: base at " + std::to_string(base.sample_rate) +
                                 " Hz, incoming at " + std::to_string(incoming.sample_rate) + " Hz");

    const int rate = incoming.sample_rate;
    const std::size_t la = base.samples.size();
    const std::size_t lb = incoming.samples.size();
    const std::size_t d_cfg = fade_samples(params.fade_seconds, rate);

    MergeStepResult r;
    r.mix.sample_rate = rate;

    if (la == 0) {
        r.mix.samples = incoming.samples;
        if (merge == MergeType::fade_in) ramp_up(r.mix.samples, 0, std::min(lb, d_cfg));
        r.placement = {0.0, static_cast<double>(lb) / rate};
        return r;
    }

    const std::size_t d = std::min({la, lb, d_cfg});
    std::size_t start = 0;

    switch (merge) {
    case MergeType::fade_in: {
        r.mix.samples.reserve(la + lb);
        r.mix.samples = base.samples;
        r.mix.samples.insert(r.mix.samples.end(), incoming.samples.begin(), incoming.samples.end());
        ramp_up(r.mix.samples, la, d);
        start = la;
        break;
    }
    case MergeType::fade_out: {
        r.mix.samples.reserve(la + lb);
        r.mix.samples = base.samples;
        r.mix.samples.insert(r.mix.samples.end(), incoming.samples.begin(), incoming.samples.end());
        ramp_down_tail(r.mix.samples, d);
        start = la;
        break;
    }
    case MergeType::crossfade: {
        r.mix.samples.resize(la + lb - d);
        std::copy(base.samples.begin(), base.samples.end() - static_cast<std::ptrdiff_t>(d),
                  r.mix.samples.begin());
        // Complementary quarter-cycle gains: cos^2 + sin^2 = 1, so equal
        // material passes through at constant level and no sample can exceed
        // the louder operand.
        const double theta_step = (M_PI / 2.0) / static_cast<double>(d + 1);
        for (std::size_t i = 0; i < d; ++i) {
            double theta = theta_step * static_cast<double>(i + 1);
            double c = std::cos(theta);
            double s = std::sin(theta);
            double g_out = c * c;
            double g_in = s * s;
            r.mix.samples[la - d + i] = static_cast<float>(
                base.samples[la - d + i] * g_out + incoming.samples[i] * g_in);
        }
        std::copy(incoming.samples.begin() + static_cast<std::ptrdiff_t>(d), incoming.samples.end(),
                  r.mix.samples.begin() + static_cast<std::ptrdiff_t>(la));
        start = la - d;
        break;
    }
    case MergeType::overlay: {
        if (lb <= la) {
            r.mix.samples = base.samples;
            start = (la - lb) / 2; // centered, floor on odd sample counts
            for (std::size_t i = 0; i < lb; ++i)
                r.mix.samples[start + i] += incoming.samples[i];
        } else {
            r.mix.samples = incoming.samples;
            start = 0;
            for (std::size_t i = 0; i < la; ++i)
                r.mix.samples[i] += base.samples[i];
        }
        double pk = peak(r.mix);
        if (pk > 1.0) {
            r.rescale_factor = 1.0 / pk;
            for (auto& s : r.mix.samples) s = static_cast<float>(s * r.rescale_factor);
        }
        break;
    }
    }

    r.placement = {static_cast<double>(start) / rate, static_cast<double>(start + lb) / rate};
    return r;
}

MergeResult merge_sequence(const plan::ScenePlan& plan, const std::vector<AudioClip>& clips,
                           const MergeParams& params) {
    const std::size_t n = plan.components.size();
    if (clips.size() != n)
        throw ArityMismatch("merge_sequence: " + std::to_string(clips.size()) + " clips for " +
                            std::to_string(n) + " components");
    if (n == 0) throw std::invalid_argument("merge_sequence: empty plan");
    if (plan.order.size() != n || plan.merge_types.size() != n)
        throw std::invalid_argument("merge_sequence: plan failed logic verification (list lengths)");
    if (!plan::is_permutation(plan.order, n))
        throw std::invalid_argument("merge_sequence: plan failed logic verification (order)");

    const int rate = clips.front().sample_rate;
    for (const auto& c : clips) {
        if (c.sample_rate != rate)
            throw SampleRateMismatch("merge_sequence: clips at mixed sample rates");
        if (c.empty()) throw std::invalid_argument("merge_sequence: empty component clip");
    }

    MergeResult result;
    result.step_rescale_factors.reserve(n);
    AudioClip mix;
    mix.sample_rate = rate;

    std::vector<LedgerEntry> entries;
    entries.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        const int comp = plan.order[i];
        auto mt = merge_type_from_string(plan.merge_types[i]);
        if (!mt)
            throw std::invalid_argument("merge_sequence: unknown merge type '" + plan.merge_types[i] +
                                        "'");
        auto step = merge_step(mix, clips[static_cast<std::size_t>(comp)], *mt, params);
        mix = std::move(step.mix);
        entries.push_back({comp, step.placement.start_s, step.placement.end_s});
        result.step_rescale_factors.push_back(step.rescale_factor);
    }

    result.mix = normalize(mix, params.final_peak_dbfs);

    std::sort(entries.begin(), entries.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
        if (a.start_s != b.start_s) return a.start_s < b.start_s;
        return a.component_index < b.component_index;
    });
    result.ledger.entries = std::move(entries);
    result.ledger.total_duration_s = result.mix.duration_s();
    return result;
}

} // namespace aadg::audio
