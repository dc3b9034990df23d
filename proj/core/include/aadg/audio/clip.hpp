#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace aadg::audio {

// Mono sample buffer, the unit of all DSP. Engine operations keep every
// sample magnitude <= 1.0; raw backend output may exceed until normalized.
struct AudioClip {
    std::vector<float> samples;
    int sample_rate = 16000;
    std::optional<int> source_component;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// max |sample|, 0 for the empty clip
double peak(const AudioClip& clip);

} // namespace aadg::audio
