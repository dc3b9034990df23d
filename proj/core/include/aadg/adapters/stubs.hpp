#pragma once

#include <cstdint>
#include <string>

#include "aadg/adapters/chat.hpp"
#include "aadg/adapters/embedding.hpp"
#include "aadg/adapters/tta.hpp"

namespace aadg::adapters {

// Offline chat model. Pure and lock-free: the reply is a function of the
// request (plus base_seed), so repeated calls are byte-identical. Recognizes
// the bundled prompt families: extraction requests by the phrase "structured
// sound plan" in the system prompt, judge requests by "impartial judge",
// anything else is answered with scenario prose.
class StubChatBackend : public ChatBackend {
public:
    explicit StubChatBackend(std::uint64_t base_seed = 0, std::string backend_id = "stub-chat");

    ChatResponse complete(const ChatRequest& request) override;

private:
    std::uint64_t base_seed_;
    std::string backend_id_;
};

// Offline text-to-audio model: a sum of three sinusoids with hash-chosen
// frequencies in 100-4000 Hz plus low-amplitude noise, exactly
// round(duration_s * rate) samples.
class StubTextToAudio : public TextToAudioBackend {
public:
    explicit StubTextToAudio(int sample_rate = 16000, SynthesisBounds bounds = {});

    audio::AudioClip synthesize(const SynthesisRequest& request) override;
    int sample_rate() const { return sample_rate_; }

private:
    int sample_rate_;
    SynthesisBounds bounds_;
};

// Offline embedding model. Text embeds the analytic band profile of the
// signal the synthesis stub would produce for the same description; audio
// embeds the measured 8-band spectral energies of the clip, tiled to the
// embedding dimension. Pairs from the same description land above 0.9
// cosine, unrelated pairs below 0.3 (enforced by the stub test suite).
class StubEmbedding : public EmbeddingBackend {
public:
    explicit StubEmbedding(int dimension = 1024);

    EmbeddingVector embed_text(std::string_view text) override;
    EmbeddingVector embed_audio(const audio::AudioClip& clip) override;
    int dimension() const override { return dimension_; }

private:
    int dimension_;
};

} // namespace aadg::adapters
