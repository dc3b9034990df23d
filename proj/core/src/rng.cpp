#include "aadg/rng.hpp"

#include <cctype>
#include <cmath>

namespace aadg {

std::uint64_t token_multiset_hash(std::string_view text) {
    // Sum of per-token hashes commutes, so token order is irrelevant while
    // repeated tokens still shift the value.
    std::uint64_t acc = 0x9ae16a3b2f90404full;
    std::size_t i = 0;
    const std::size_t n = text.size();
    std::size_t tokens = 0;
    while (i < n) {
        while (i < n && !std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        std::uint64_t h = kFnvOffset;
        bool any = false;
        while (i < n && std::isalnum(static_cast<unsigned char>(text[i]))) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            c = static_cast<unsigned char>(std::tolower(c));
            h ^= c;
            h *= kFnvPrime;
            any = true;
            ++i;
        }
        if (any) {
            acc += mix64(h);
            ++tokens;
        }
    }
    return mix64(acc ^ tokens);
}

double SplitMix64::gauss() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace aadg
