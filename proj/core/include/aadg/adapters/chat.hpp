#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace aadg::adapters {

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 0.7; // [0, 2]
    int max_tokens = 1024;    // >= 1
    std::optional<std::int64_t> seed;
};

struct ChatResponse {
    std::string text;
    std::string backend_id;
    std::int64_t latency_ms = 0;
    int retries = 0; // transport retries spent on this call
};

// Bounds check; throws std::invalid_argument before any transport work.
void validate(const ChatRequest& request);

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    // Returns the backend text verbatim apart from surrounding whitespace.
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

} // namespace aadg::adapters
