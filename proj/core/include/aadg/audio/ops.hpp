#pragma once

#include "aadg/audio/clip.hpp"

namespace aadg::audio {

// 10^(dbfs/20)
double dbfs_to_peak(double dbfs);

// Linear-interpolation resampling. Output length = round(n * target/source);
// identity (bit-exact copy) when the rates already match.
AudioClip resample(const AudioClip& clip, int target_rate);

// Uniform gain so that max |sample| = 10^(target_peak_dbfs/20).
// Silent clips (peak <= 1e-9) are returned unchanged.
AudioClip normalize(const AudioClip& clip, double target_peak_dbfs);

} // namespace aadg::audio
