#pragma once

#include <cstdint>
#include <functional>

#include "aadg/errors.hpp"
#include "aadg/rng.hpp"

namespace aadg::adapters {

// Exponential backoff with full jitter: attempt k sleeps for
// uniform(0, base * factor^k) seconds. Only TransportError is retried;
// precondition violations and refusals surface immediately.
struct RetryPolicy {
    int max_retries = 3;
    double base_delay_s = 1.0;
    double backoff_factor = 2.0;
    std::uint64_t jitter_seed = 0x6a09e667f3bcc908ull;
    std::function<void(double)> sleep; // injectable; default really sleeps
};

void default_sleep(double seconds);

template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& fn, int* retries_out = nullptr) {
    SplitMix64 rng(policy.jitter_seed);
    const auto sleep_fn = policy.sleep ? policy.sleep : default_sleep;
    int attempt = 0;
    for (;;) {
        try {
            auto result = fn();
            if (retries_out) *retries_out = attempt;
            return result;
        } catch (const TransportError&) {
            if (attempt >= policy.max_retries) throw;
            double cap = policy.base_delay_s;
            for (int i = 0; i < attempt; ++i) cap *= policy.backoff_factor;
            sleep_fn(rng.uniform(0.0, cap));
            ++attempt;
        }
    }
}

} // namespace aadg::adapters
