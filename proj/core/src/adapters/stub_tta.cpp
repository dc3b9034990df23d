#include <cmath>
#include <stdexcept>

#include "aadg/adapters/stub_world.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/errors.hpp"
#include "aadg/rng.hpp"

namespace aadg::adapters {

void validate(const SynthesisRequest& request, const SynthesisBounds& bounds) {
    if (request.description.empty())
        throw std::invalid_argument("synthesis request: description is empty");
    if (!(request.duration_s >= bounds.min_duration_s && request.duration_s <= bounds.max_duration_s))
        throw std::invalid_argument("synthesis request: duration " + std::to_string(request.duration_s) +
                                    " s outside [" + std::to_string(bounds.min_duration_s) + ", " +
                                    std::to_string(bounds.max_duration_s) + "] s");
}

void check_duration(const audio::AudioClip& clip, double requested_s) {
    double got = clip.duration_s();
    if (requested_s <= 0) throw std::invalid_argument("check_duration: requested duration must be > 0");
    if (std::fabs(got - requested_s) > 0.05 * requested_s)
        throw DurationMismatch("synthesized " + std::to_string(got) + " s for a " +
                               std::to_string(requested_s) + " s request");
}

StubTextToAudio::StubTextToAudio(int sample_rate, SynthesisBounds bounds)
    : sample_rate_(sample_rate), bounds_(bounds) {
    if (sample_rate <= 0) throw std::invalid_argument("stub tta: sample_rate must be positive");
}

audio::AudioClip StubTextToAudio::synthesize(const SynthesisRequest& request) {
    validate(request, bounds_);

    const auto plan = stub::signal_plan_for(request.description, sample_rate_);
    // frequencies come from the description alone; the seed steers phases and
    // noise so perturbed retries produce a different waveform with the same
    // spectral signature
    SplitMix64 rng(combine_seed(static_cast<std::uint64_t>(request.seed.value_or(0)),
                                token_multiset_hash(request.description)));
    const double phases[3] = {rng.uniform(0.0, 2.0 * M_PI), rng.uniform(0.0, 2.0 * M_PI),
                              rng.uniform(0.0, 2.0 * M_PI)};

    audio::AudioClip clip;
    clip.sample_rate = sample_rate_;
    const auto n = static_cast<std::size_t>(std::llround(request.duration_s * sample_rate_));
    clip.samples.resize(n);
    const double w = 2.0 * M_PI / sample_rate_;
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i);
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
            s += plan.amps[static_cast<std::size_t>(k)] *
                 std::sin(w * plan.freqs_hz[static_cast<std::size_t>(k)] * t +
                          phases[static_cast<std::size_t>(k)]);
        s += 0.003 * rng.gauss();
        clip.samples[i] = static_cast<float>(s);
    }
    return clip;
}

} // namespace aadg::adapters
