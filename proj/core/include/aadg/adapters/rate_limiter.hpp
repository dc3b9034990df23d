#pragma once

#include <functional>
#include <mutex>

namespace aadg::adapters {

// Token bucket shared by concurrent pipeline workers: refills at
// requests_per_minute, holds at most `burst` tokens, acquire() blocks until a
// token is available. Clock and sleep are injectable for deterministic tests.
class TokenBucket {
public:
    using ClockFn = std::function<double()>;   // seconds, monotonic
    using SleepFn = std::function<void(double)>;

    explicit TokenBucket(double requests_per_minute, double burst = 1.0);
    TokenBucket(double requests_per_minute, double burst, ClockFn clock, SleepFn sleep);

    void acquire();

    // Non-blocking probe, mainly for tests.
    bool try_acquire();

private:
    void refill_locked(double now);

    double rate_per_s_;
    double burst_;
    double tokens_;
    double last_;
    ClockFn clock_;
    SleepFn sleep_;
    std::mutex mu_;
};

} // namespace aadg::adapters
