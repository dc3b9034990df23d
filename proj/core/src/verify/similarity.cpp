#include <cmath>
#include <stdexcept>

#include "aadg/errors.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::verify {

double cosine_similarity(const adapters::EmbeddingVector& a, const adapters::EmbeddingVector& b) {
    if (a.values.size() != b.values.size() || a.dimension != b.dimension)
        throw DimensionMismatch("cosine: " + std::to_string(a.values.size()) + " vs " +
                                std::to_string(b.values.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double x = a.values[i], y = b.values[i];
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (na == 0.0 || nb == 0.0) throw ZeroNormVector("cosine: zero-norm operand");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double regularized_similarity(double cosine, double alpha, double beta) {
    if (alpha <= 0.0) throw std::invalid_argument("regularized_similarity: alpha must be > 0");
    double x = alpha * cosine - beta;
    return 1.0 / (1.0 + std::exp(-x));
}

AlignmentScore verify_audio_alignment(adapters::EmbeddingBackend& backend,
                                      const audio::AudioClip& clip, std::string_view description,
                                      const AlignmentParams& params) {
    if (clip.empty()) throw std::invalid_argument("verify_audio_alignment: empty clip");
    auto text_vec = backend.embed_text(description);
    auto audio_vec = backend.embed_audio(clip);

    AlignmentScore score;
    score.alpha = params.alpha;
    score.beta = params.beta;
    score.cosine = cosine_similarity(text_vec, audio_vec);
    score.regularized = regularized_similarity(score.cosine, params.alpha, params.beta);
    score.pass = score.regularized >= params.threshold;
    return score;
}

} // namespace aadg::verify
