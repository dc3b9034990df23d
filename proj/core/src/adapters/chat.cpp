#include "aadg/adapters/chat.hpp"

#include <stdexcept>

namespace aadg::adapters {

void validate(const ChatRequest& request) {
    if (request.temperature < 0.0 || request.temperature > 2.0)
        throw std::invalid_argument("chat request: temperature must be within [0, 2], got " +
                                    std::to_string(request.temperature));
    if (request.max_tokens < 1)
        throw std::invalid_argument("chat request: max_tokens must be >= 1");
}

} // namespace aadg::adapters
