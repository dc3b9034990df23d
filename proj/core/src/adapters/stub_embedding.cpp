#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aadg/adapters/stub_world.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/rng.hpp"

namespace aadg::adapters {

namespace {

using Profile = std::array<double, stub::kBandCount>;

// Goertzel magnitude-squared at one DFT bin over a rectangular window.
double bin_power(const float* s, std::size_t w, std::size_t k) {
    const double omega = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(w);
    const double coeff = 2.0 * std::cos(omega);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t n = 0; n < w; ++n) {
        double s0 = s[n] + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

Profile measure_bands(const audio::AudioClip& clip) {
    Profile e{};
    const std::size_t w = std::min<std::size_t>(stub::kAnalysisWindow, clip.samples.size());
    if (w < 2) return e;
    const double bin_hz = static_cast<double>(clip.sample_rate) / static_cast<double>(w);
    const auto k_lo = static_cast<std::size_t>(std::ceil(stub::kBandLoHz / bin_hz));
    const auto k_hi = std::min<std::size_t>(w / 2,
                                            static_cast<std::size_t>(std::floor(stub::kBandHiHz / bin_hz)));
    for (std::size_t k = std::max<std::size_t>(1, k_lo); k <= k_hi; ++k) {
        int band = stub::band_of_hz(static_cast<double>(k) * bin_hz);
        if (band >= 0) e[static_cast<std::size_t>(band)] += bin_power(clip.samples.data(), w, k);
    }
    return e;
}

Profile analytic_bands(std::string_view text) {
    Profile e{};
    auto plan = stub::signal_plan_for(text, 16000); // band picks are rate-independent
    for (int i = 0; i < 3; ++i)
        e[static_cast<std::size_t>(plan.bands[static_cast<std::size_t>(i)])] +=
            plan.amps[static_cast<std::size_t>(i)] * plan.amps[static_cast<std::size_t>(i)] / 2.0;
    return e;
}

// Bands ordered by descending energy form the signature; the pseudo-random
// body keyed on it is what separates unrelated descriptions, while the tiled
// raw profile keeps the vector faithful to the actual spectrum.
EmbeddingVector build(const Profile& profile, EmbeddingVector::Modality modality, int dim) {
    std::array<int, stub::kBandCount> rank{};
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
        return profile[static_cast<std::size_t>(a)] > profile[static_cast<std::size_t>(b)];
    });

    std::uint64_t sig = fnv1a_u64(static_cast<std::uint64_t>(dim));
    for (int i = 0; i < 3; ++i) sig = fnv1a_u64(static_cast<std::uint64_t>(rank[static_cast<std::size_t>(i)]), sig);

    std::vector<double> tile(static_cast<std::size_t>(dim));
    double tile_norm = 0.0;
    for (std::size_t j = 0; j < tile.size(); ++j) {
        tile[j] = profile[j % stub::kBandCount] + 1e-12;
        tile_norm += tile[j] * tile[j];
    }
    tile_norm = std::sqrt(tile_norm);

    SplitMix64 rng(sig);
    std::vector<double> body(static_cast<std::size_t>(dim));
    double body_norm = 0.0;
    for (auto& v : body) {
        v = rng.gauss();
        body_norm += v * v;
    }
    body_norm = std::sqrt(body_norm);

    EmbeddingVector out;
    out.modality = modality;
    out.dimension = dim;
    out.values.resize(static_cast<std::size_t>(dim));
    double norm = 0.0;
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        double v = tile[j] / tile_norm + 3.0 * body[j] / body_norm;
        out.values[j] = v;
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : out.values) v /= norm;
    return out;
}

} // namespace

StubEmbedding::StubEmbedding(int dimension) : dimension_(dimension) {
    if (dimension <= 0) throw std::invalid_argument("stub embedding: dimension must be positive");
}

EmbeddingVector StubEmbedding::embed_text(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("embed_text: empty input");
    return build(analytic_bands(text), EmbeddingVector::Modality::text, dimension_);
}

EmbeddingVector StubEmbedding::embed_audio(const audio::AudioClip& clip) {
    if (clip.duration_s() < 0.1)
        throw std::invalid_argument("embed_audio: clip shorter than 0.1 s");
    return build(measure_bands(clip), EmbeddingVector::Modality::audio, dimension_);
}

} // namespace aadg::adapters
