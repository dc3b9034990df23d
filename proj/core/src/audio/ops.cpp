#include "aadg/audio/ops.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace aadg::audio {

double peak(const AudioClip& clip) {
    double pk = 0.0;
    for (float s : clip.samples) {
        double a = std::fabs(static_cast<double>(s));
        if (a > pk) pk = a;
    }
    return pk;
}

double dbfs_to_peak(double dbfs) { return std::pow(10.0, dbfs / 20.0); }

AudioClip resample(const AudioClip& clip, int target_rate) {
    if (target_rate <= 0) throw std::invalid_argument("resample: target_rate must be positive");
    if (clip.sample_rate == target_rate) return clip;

    AudioClip out;
    out.sample_rate = target_rate;
    out.source_component = clip.source_component;
    if (clip.empty()) return out;

    const std::size_t n = clip.samples.size();
    const auto out_len = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * target_rate / clip.sample_rate));
    out.samples.resize(out_len);

    const double step = static_cast<double>(clip.sample_rate) / target_rate;
    for (std::size_t i = 0; i < out_len; ++i) {
        double pos = static_cast<double>(i) * step;
        auto i0 = static_cast<std::size_t>(pos);
        if (i0 >= n - 1) {
            out.samples[i] = clip.samples[n - 1];
            continue;
        }
        double frac = pos - static_cast<double>(i0);
        double a = clip.samples[i0];
        double b = clip.samples[i0 + 1];
        out.samples[i] = static_cast<float>(a + (b - a) * frac);
    }
    return out;
}

AudioClip normalize(const AudioClip& clip, double target_peak_dbfs) {
    double pk = peak(clip);
    if (pk <= 1e-9) return clip; // silent guard
    double gain = dbfs_to_peak(target_peak_dbfs) / pk;
    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.source_component = clip.source_component;
    out.samples.resize(clip.samples.size());
    for (std::size_t i = 0; i < clip.samples.size(); ++i)
        out.samples[i] = static_cast<float>(clip.samples[i] * gain);
    return out;
}

} // namespace aadg::audio
