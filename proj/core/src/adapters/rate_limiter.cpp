#include "aadg/adapters/rate_limiter.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace aadg::adapters {

namespace {
double steady_now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}
void real_sleep(double s) {
    if (s > 0) std::this_thread::sleep_for(std::chrono::duration<double>(s));
}
} // namespace

TokenBucket::TokenBucket(double requests_per_minute, double burst)
    : TokenBucket(requests_per_minute, burst, steady_now, real_sleep) {}

TokenBucket::TokenBucket(double requests_per_minute, double burst, ClockFn clock, SleepFn sleep)
    : rate_per_s_(requests_per_minute / 60.0),
      burst_(burst),
      tokens_(burst),
      clock_(std::move(clock)),
      sleep_(std::move(sleep)) {
    if (requests_per_minute <= 0) throw std::invalid_argument("rate limiter: requests_per_minute must be > 0");
    if (burst < 1.0) throw std::invalid_argument("rate limiter: burst must be >= 1");
    last_ = clock_();
}

void TokenBucket::refill_locked(double now) {
    double elapsed = std::max(0.0, now - last_);
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_per_s_);
    last_ = now;
}

bool TokenBucket::try_acquire() {
    std::lock_guard<std::mutex> lock(mu_);
    refill_locked(clock_());
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return true;
    }
    return false;
}

void TokenBucket::acquire() {
    for (;;) {
        double wait;
        {
            std::lock_guard<std::mutex> lock(mu_);
            refill_locked(clock_());
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            wait = (1.0 - tokens_) / rate_per_s_;
        }
        sleep_(wait);
    }
}

} // namespace aadg::adapters
