#include <nlohmann/json.hpp>

#include "aadg/adapters/http.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/base64.hpp"
#include "aadg/errors.hpp"

namespace aadg::adapters {

HttpTextToAudio::HttpTextToAudio(HttpTtaConfig config) : HttpTextToAudio(std::move(config), nullptr) {
    poster_ = make_httplib_poster(config_.endpoint, config_.timeout_s);
}

HttpTextToAudio::HttpTextToAudio(HttpTtaConfig config, std::unique_ptr<HttpPoster> poster)
    : config_(std::move(config)), poster_(std::move(poster)) {}

audio::AudioClip HttpTextToAudio::synthesize(const SynthesisRequest& request) {
    validate(request, config_.bounds);

    nlohmann::json body = {{"description", request.description}, {"duration_s", request.duration_s}};
    if (request.seed) body["seed"] = *request.seed;

    auto reply = with_retries(config_.retry, [&] {
        if (config_.limiter) config_.limiter->acquire();
        auto r = poster_->post("/synthesize", body.dump(), "application/json", {});
        raise_for_status(r, "tta");
        return r;
    });

    audio::AudioClip clip;
    if (reply.content_type.find("audio/wav") != std::string::npos ||
        reply.content_type.find("audio/x-wav") != std::string::npos) {
        clip = audio::read_wav_bytes(reply.body);
    } else {
        auto parsed = nlohmann::json::parse(reply.body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("wav_base64"))
            throw BackendRefusal("tta: expected audio/wav body or {\"wav_base64\": ...}");
        clip = audio::read_wav_bytes(base64_decode(parsed["wav_base64"].get<std::string>()));
    }
    check_duration(clip, request.duration_s);
    return clip;
}

} // namespace aadg::adapters
