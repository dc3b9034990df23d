#include <nlohmann/json.hpp>

#include "aadg/adapters/http.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/base64.hpp"
#include "aadg/errors.hpp"

namespace aadg::adapters {

HttpEmbedding::HttpEmbedding(HttpEmbeddingConfig config) : HttpEmbedding(std::move(config), nullptr) {
    poster_ = make_httplib_poster(config_.endpoint, config_.timeout_s);
}

HttpEmbedding::HttpEmbedding(HttpEmbeddingConfig config, std::unique_ptr<HttpPoster> poster)
    : config_(std::move(config)), poster_(std::move(poster)), dimension_(config_.expected_dimension) {}

EmbeddingVector HttpEmbedding::request_embedding(const std::string& body,
                                                 EmbeddingVector::Modality modality) {
    auto reply = with_retries(config_.retry, [&] {
        if (config_.limiter) config_.limiter->acquire();
        auto r = poster_->post("/embed", body, "application/json", {});
        raise_for_status(r, "embed");
        return r;
    });

    auto parsed = nlohmann::json::parse(reply.body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("values") || !parsed["values"].is_array())
        throw BackendRefusal("embed: expected {\"dimension\": N, \"values\": [...]}");

    EmbeddingVector v;
    v.modality = modality;
    v.values.reserve(parsed["values"].size());
    for (const auto& x : parsed["values"]) v.values.push_back(x.get<double>());
    v.dimension = parsed.value("dimension", static_cast<int>(v.values.size()));
    if (v.dimension != static_cast<int>(v.values.size()))
        throw DimensionMismatch("embed: declared dimension " + std::to_string(v.dimension) +
                                " but got " + std::to_string(v.values.size()) + " values");
    if (dimension_ == 0) dimension_ = v.dimension; // adopt on first contact
    if (v.dimension != dimension_)
        throw DimensionMismatch("embed: backend switched dimension from " +
                                std::to_string(dimension_) + " to " + std::to_string(v.dimension));
    return v;
}

EmbeddingVector HttpEmbedding::embed_text(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("embed_text: empty input");
    nlohmann::json body = {{"modality", "text"}, {"text", std::string(text)}};
    return request_embedding(body.dump(), EmbeddingVector::Modality::text);
}

EmbeddingVector HttpEmbedding::embed_audio(const audio::AudioClip& clip) {
    if (clip.duration_s() < 0.1) throw std::invalid_argument("embed_audio: clip shorter than 0.1 s");
    nlohmann::json body = {
        {"modality", "audio"},
        {"sample_rate", clip.sample_rate},
        {"wav_base64", base64_encode(audio::wav_bytes(clip, audio::WavEncoding::float32))}};
    return request_embedding(body.dump(), EmbeddingVector::Modality::audio);
}

} // namespace aadg::adapters
