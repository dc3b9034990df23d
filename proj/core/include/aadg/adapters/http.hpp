#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aadg/adapters/chat.hpp"
#include "aadg/adapters/embedding.hpp"
#include "aadg/adapters/rate_limiter.hpp"
#include "aadg/adapters/retry.hpp"
#include "aadg/adapters/tta.hpp"

namespace aadg::adapters {

struct HttpReply {
    int status = 0;
    std::string body;
    std::string content_type;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

// One POST attempt. Implementations throw TransportError for connect /
// timeout / read failures; status handling stays with the caller.
class HttpPoster {
public:
    virtual ~HttpPoster() = default;
    virtual HttpReply post(const std::string& path, const std::string& body,
                           const std::string& content_type, const HttpHeaders& headers) = 0;
};

// endpoint: http://host:port[/base-path]
std::unique_ptr<HttpPoster> make_httplib_poster(const std::string& endpoint, double timeout_s);

// TransportError on 408/429/5xx (retryable), BackendRefusal on other
// non-2xx statuses.
void raise_for_status(const HttpReply& reply, const std::string& what);

// Lightweight reachability probe (TCP connect + one request); throws
// TransportError when the endpoint cannot be reached.
void probe_endpoint(const std::string& endpoint, double timeout_s);

struct HttpChatConfig {
    std::string endpoint;
    std::string model = "default";
    std::string api_key_env = "AADG_CHAT_API_KEY";
    double timeout_s = 60.0;
    RetryPolicy retry;
    std::shared_ptr<TokenBucket> limiter;
    std::string backend_id = "http-chat";
};

// De-facto chat-completions wire shape: JSON body with model, messages
// (role/content), temperature, max_tokens, optional seed; reply text read
// from choices[0].message.content.
class HttpChatBackend : public ChatBackend {
public:
    explicit HttpChatBackend(HttpChatConfig config);
    HttpChatBackend(HttpChatConfig config, std::unique_ptr<HttpPoster> poster);

    ChatResponse complete(const ChatRequest& request) override;

private:
    HttpChatConfig config_;
    std::unique_ptr<HttpPoster> poster_;
};

struct HttpTtaConfig {
    std::string endpoint;
    double timeout_s = 300.0;
    RetryPolicy retry;
    std::shared_ptr<TokenBucket> limiter;
    SynthesisBounds bounds;
};

// POST /synthesize with {description, duration_s, seed?}; accepts either a
// raw audio/wav body or JSON {"wav_base64": ...}.
class HttpTextToAudio : public TextToAudioBackend {
public:
    explicit HttpTextToAudio(HttpTtaConfig config);
    HttpTextToAudio(HttpTtaConfig config, std::unique_ptr<HttpPoster> poster);

    audio::AudioClip synthesize(const SynthesisRequest& request) override;

private:
    HttpTtaConfig config_;
    std::unique_ptr<HttpPoster> poster_;
};

struct HttpEmbeddingConfig {
    std::string endpoint;
    double timeout_s = 120.0;
    RetryPolicy retry;
    std::shared_ptr<TokenBucket> limiter;
    int expected_dimension = 0; // 0 = adopt the first reply's dimension
};

// POST /embed with {"modality":"text","text":...} or
// {"modality":"audio","wav_base64":...}; reply {"dimension":N,"values":[..]}.
class HttpEmbedding : public EmbeddingBackend {
public:
    explicit HttpEmbedding(HttpEmbeddingConfig config);
    HttpEmbedding(HttpEmbeddingConfig config, std::unique_ptr<HttpPoster> poster);

    EmbeddingVector embed_text(std::string_view text) override;
    EmbeddingVector embed_audio(const audio::AudioClip& clip) override;
    int dimension() const override { return dimension_; }

private:
    EmbeddingVector request_embedding(const std::string& body, EmbeddingVector::Modality modality);

    HttpEmbeddingConfig config_;
    std::unique_ptr<HttpPoster> poster_;
    int dimension_ = 0;
};

struct SubprocessTtaConfig {
    std::string command; // run via /bin/sh -c
    SynthesisBounds bounds;
};

// Local research models are usually wrapped as scripts: the request JSON is
// written to the child's stdin and the child prints the output WAV path.
class SubprocessTextToAudio : public TextToAudioBackend {
public:
    explicit SubprocessTextToAudio(SubprocessTtaConfig config);

    audio::AudioClip synthesize(const SynthesisRequest& request) override;

private:
    SubprocessTtaConfig config_;
};

} // namespace aadg::adapters
