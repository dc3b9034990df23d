#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "aadg/audio/clip.hpp"

namespace aadg::audio {

enum class WavEncoding { pcm16, float32 };

// RIFF/WAVE, formats 1 (PCM, 16-bit) and 3 (IEEE float, 32-bit).
// Multi-channel files are downmixed to mono by channel averaging on read.
AudioClip read_wav(const std::filesystem::path& path);
AudioClip read_wav_bytes(std::string_view bytes);

// Writes mono. float32 round-trips bit-exactly; pcm16 within 1/32768.
void write_wav(const AudioClip& clip, const std::filesystem::path& path, WavEncoding encoding);
std::string wav_bytes(const AudioClip& clip, WavEncoding encoding);

} // namespace aadg::audio
