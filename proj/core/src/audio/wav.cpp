#include "aadg/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "aadg/errors.hpp"

namespace aadg::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

struct Cursor {
    const unsigned char* p;
    std::size_t left;

    void need(std::size_t n) const {
        if (left < n) throw MalformedWav("wav: truncated file");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        p += 4;
        left -= 4;
        return v;
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
        p += 2;
        left -= 2;
        return v;
    }
    void skip(std::size_t n) {
        need(n);
        p += n;
        left -= n;
    }
    bool tag(const char* t) {
        need(4);
        bool ok = std::memcmp(p, t, 4) == 0;
        p += 4;
        left -= 4;
        return ok;
    }
};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

} // namespace

AudioClip read_wav_bytes(std::string_view bytes) {
    Cursor c{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()};
    if (!c.tag("RIFF")) throw MalformedWav("wav: missing RIFF magic");
    c.u32(); // riff size, untrusted
    if (!c.tag("WAVE")) throw MalformedWav("wav: missing WAVE magic");

    bool have_fmt = false;
    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;

    while (c.left >= 8) {
        c.need(8);
        char id[4];
        std::memcpy(id, c.p, 4);
        c.p += 4;
        c.left -= 4;
        std::uint32_t len = c.u32();
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (len < 16) throw MalformedWav("wav: fmt chunk too short");
            Cursor f{c.p, std::min<std::size_t>(c.left, len)};
            format = f.u16();
            channels = f.u16();
            rate = f.u32();
            f.u32(); // byte rate
            f.u16(); // block align
            bits = f.u16();
            have_fmt = true;
            c.skip(len + (len & 1));
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (!have_fmt) throw MalformedWav("wav: data chunk before fmt");
            if (channels == 0 || rate == 0) throw MalformedWav("wav: zero channels or rate");
            c.need(len);

            std::size_t bytes_per_sample;
            if (format == kFormatPcm && bits == 16) {
                bytes_per_sample = 2;
            } else if (format == kFormatFloat && bits == 32) {
                bytes_per_sample = 4;
            } else {
                throw UnsupportedEncoding("wav: only pcm16 and float32 are supported (format=" +
                                          std::to_string(format) + ", bits=" + std::to_string(bits) + ")");
            }

            const std::size_t frame_bytes = bytes_per_sample * channels;
            if (len % frame_bytes != 0) throw MalformedWav("wav: data length not a whole number of frames");
            const std::size_t frames = len / frame_bytes;

            AudioClip clip;
            clip.sample_rate = static_cast<int>(rate);
            clip.samples.resize(frames);
            const unsigned char* d = c.p;
            for (std::size_t i = 0; i < frames; ++i) {
                double acc = 0.0;
                for (std::uint16_t ch = 0; ch < channels; ++ch) {
                    const unsigned char* s = d + (i * channels + ch) * bytes_per_sample;
                    if (bytes_per_sample == 2) {
                        std::int16_t v = static_cast<std::int16_t>(s[0] | (s[1] << 8));
                        acc += static_cast<double>(v) / 32767.0;
                    } else {
                        std::uint32_t raw = static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
                                            (static_cast<std::uint32_t>(s[2]) << 16) |
                                            (static_cast<std::uint32_t>(s[3]) << 24);
                        float f;
                        std::memcpy(&f, &raw, 4);
                        acc += f;
                    }
                }
                clip.samples[i] = channels == 1 ? static_cast<float>(acc)
                                                : static_cast<float>(acc / channels);
            }
            return clip;
        } else {
            // unknown chunk (LIST, fact, ...): skip, word aligned
            c.skip(std::min<std::size_t>(c.left, len + (len & 1)));
        }
    }
    throw MalformedWav("wav: no data chunk");
}

AudioClip read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("wav: cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw IoFailure("wav: read error on " + path.string());
    return read_wav_bytes(bytes);
}

std::string wav_bytes(const AudioClip& clip, WavEncoding encoding) {
    if (clip.sample_rate <= 0) throw std::invalid_argument("wav: sample_rate must be positive");

    const std::size_t n = clip.samples.size();
    const std::uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : 32;
    const std::uint16_t fmt = encoding == WavEncoding::pcm16 ? kFormatPcm : kFormatFloat;
    const std::uint32_t data_len = static_cast<std::uint32_t>(n * bits / 8);

    std::string out;
    out.reserve(44 + data_len);
    out += "RIFF";
    put_u32(out, 36 + data_len);
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, fmt);
    put_u16(out, 1); // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * bits / 8);
    put_u16(out, bits / 8);
    put_u16(out, bits);
    out += "data";
    put_u32(out, data_len);

    if (encoding == WavEncoding::pcm16) {
        for (float s : clip.samples) {
            double v = std::clamp(static_cast<double>(s), -1.0, 1.0);
            auto q = static_cast<std::int16_t>(std::lrint(v * 32767.0));
            put_u16(out, static_cast<std::uint16_t>(q));
        }
    } else {
        for (float s : clip.samples) {
            std::uint32_t raw;
            std::memcpy(&raw, &s, 4);
            put_u32(out, raw);
        }
    }
    return out;
}

void write_wav(const AudioClip& clip, const std::filesystem::path& path, WavEncoding encoding) {
    std::string bytes = wav_bytes(clip, encoding);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("wav: cannot open for write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out.good()) throw IoFailure("wav: write failed for " + path.string());
}

} // namespace aadg::audio
