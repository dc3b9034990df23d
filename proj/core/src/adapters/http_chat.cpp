#include <chrono>
#include <mutex>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "aadg/adapters/http.hpp"
#include "aadg/errors.hpp"

namespace aadg::adapters {

namespace {

struct ParsedEndpoint {
    std::string host; // scheme://host:port
    std::string base; // path prefix, may be empty
};

ParsedEndpoint split_endpoint(const std::string& endpoint) {
    auto scheme = endpoint.find("://");
    if (scheme == std::string::npos)
        throw ConfigError("endpoint must start with http:// or https://: " + endpoint);
    auto slash = endpoint.find('/', scheme + 3);
    if (slash == std::string::npos) return {endpoint, ""};
    std::string base = endpoint.substr(slash);
    while (!base.empty() && base.back() == '/') base.pop_back();
    return {endpoint.substr(0, slash), base};
}

class HttplibPoster : public HttpPoster {
public:
    HttplibPoster(const std::string& endpoint, double timeout_s)
        : parsed_(split_endpoint(endpoint)), client_(parsed_.host) {
        auto secs = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
        client_.set_connection_timeout(secs);
        client_.set_read_timeout(secs);
        client_.set_write_timeout(secs);
    }

    HttpReply post(const std::string& path, const std::string& body, const std::string& content_type,
                   const HttpHeaders& headers) override {
        // httplib::Client is not safe for concurrent requests; pipeline
        // workers share one backend instance
        std::lock_guard<std::mutex> lock(mu_);
        httplib::Headers h(headers.begin(), headers.end());
        auto res = client_.Post(parsed_.base + path, h, body, content_type);
        if (!res)
            throw TransportError("POST " + parsed_.host + parsed_.base + path + ": " +
                                 httplib::to_string(res.error()));
        HttpReply reply;
        reply.status = res->status;
        reply.body = res->body;
        reply.content_type = res->get_header_value("Content-Type");
        return reply;
    }

private:
    ParsedEndpoint parsed_;
    httplib::Client client_;
    std::mutex mu_;
};

} // namespace

std::unique_ptr<HttpPoster> make_httplib_poster(const std::string& endpoint, double timeout_s) {
    return std::make_unique<HttplibPoster>(endpoint, timeout_s);
}

void raise_for_status(const HttpReply& reply, const std::string& what) {
    if (reply.status >= 200 && reply.status < 300) return;
    std::string detail = what + ": status " + std::to_string(reply.status);
    if (!reply.body.empty()) detail += " " + reply.body.substr(0, 200);
    if (reply.status == 408 || reply.status == 429 || reply.status >= 500)
        throw TransportError(detail);
    throw BackendRefusal(detail);
}

void probe_endpoint(const std::string& endpoint, double timeout_s) {
    auto parsed = split_endpoint(endpoint);
    httplib::Client client(parsed.host);
    auto secs = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    auto res = client.Get(parsed.base.empty() ? "/" : parsed.base);
    if (!res) throw TransportError("endpoint unreachable: " + endpoint);
    // any HTTP status at all proves the endpoint is alive
}

HttpChatBackend::HttpChatBackend(HttpChatConfig config)
    : HttpChatBackend(std::move(config), nullptr) {
    poster_ = make_httplib_poster(config_.endpoint, config_.timeout_s);
}

HttpChatBackend::HttpChatBackend(HttpChatConfig config, std::unique_ptr<HttpPoster> poster)
    : config_(std::move(config)), poster_(std::move(poster)) {}

ChatResponse HttpChatBackend::complete(const ChatRequest& request) {
    validate(request);

    nlohmann::json body = {
        {"model", config_.model},
        {"messages",
         {{{"role", "system"}, {"content", request.system_prompt}},
          {{"role", "user"}, {"content", request.user_prompt}}}},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
    if (request.seed) body["seed"] = *request.seed;

    HttpHeaders headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
        headers.emplace_back("Authorization", std::string("Bearer ") + key);

    const auto started = std::chrono::steady_clock::now();
    int retries = 0;
    auto reply = with_retries(
        config_.retry,
        [&] {
            if (config_.limiter) config_.limiter->acquire();
            auto r = poster_->post("/v1/chat/completions", body.dump(), "application/json", headers);
            raise_for_status(r, "chat");
            return r;
        },
        &retries);

    ChatResponse response;
    response.backend_id = config_.backend_id + ":" + config_.model;
    response.retries = retries;
    response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();

    auto parsed = nlohmann::json::parse(reply.body, nullptr, false);
    if (parsed.is_discarded())
        throw BackendRefusal("chat: response is not JSON: " + reply.body.substr(0, 200));
    try {
        response.text = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw BackendRefusal("chat: response missing choices[0].message.content");
    }

    // verbatim apart from surrounding whitespace
    auto begin = response.text.find_first_not_of(" \t\r\n");
    auto end = response.text.find_last_not_of(" \t\r\n");
    response.text = begin == std::string::npos ? "" : response.text.substr(begin, end - begin + 1);
    if (response.text.empty()) throw EmptyCompletion("chat: backend returned blank text");
    return response;
}

} // namespace aadg::adapters
