#include "aadg/adapters/retry.hpp"

#include <chrono>
#include <thread>

namespace aadg::adapters {

void default_sleep(double seconds) {
    if (seconds <= 0.0) return;
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

} // namespace aadg::adapters
