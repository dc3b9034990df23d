#pragma once

#include <string_view>
#include <vector>

#include "aadg/audio/clip.hpp"

namespace aadg::adapters {

struct EmbeddingVector {
    enum class Modality { text, audio };

    std::vector<double> values;
    Modality modality = Modality::text;
    int dimension = 0; // == values.size()
};

class EmbeddingBackend {
public:
    virtual ~EmbeddingBackend() = default;
    virtual EmbeddingVector embed_text(std::string_view text) = 0;
    // clip must be at least 0.1 s long
    virtual EmbeddingVector embed_audio(const audio::AudioClip& clip) = 0;
    virtual int dimension() const = 0;
};

} // namespace aadg::adapters
