#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aadg/audio/clip.hpp"

namespace aadg::adapters {

struct SynthesisRequest {
    std::string description; // short sound prompt
    double duration_s = 5.0;
    std::optional<std::int64_t> seed;
};

struct SynthesisBounds {
    double min_duration_s = 1.0;
    double max_duration_s = 30.0;
};

void validate(const SynthesisRequest& request, const SynthesisBounds& bounds);

// Throws DurationMismatch when the backend length deviates > 5% from the
// requested duration.
void check_duration(const audio::AudioClip& clip, double requested_s);

class TextToAudioBackend {
public:
    virtual ~TextToAudioBackend() = default;
    // Returns a mono clip at the backend's native rate; the caller resamples.
    virtual audio::AudioClip synthesize(const SynthesisRequest& request) = 0;
};

} // namespace aadg::adapters
