#include "aadg/canonical_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "aadg/rng.hpp"

namespace aadg {

namespace {

void emit(const nlohmann::json& v, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (v.type()) {
    case value_t::null:
        out += "null";
        break;
    case value_t::boolean:
        out += v.get<bool>() ? "true" : "false";
        break;
    case value_t::number_integer: {
        char buf[24];
        auto r = std::to_chars(buf, buf + sizeof(buf), v.get<std::int64_t>());
        out.append(buf, r.ptr);
        break;
    }
    case value_t::number_unsigned: {
        char buf[24];
        auto r = std::to_chars(buf, buf + sizeof(buf), v.get<std::uint64_t>());
        out.append(buf, r.ptr);
        break;
    }
    case value_t::number_float:
        out += canonical_real(v.get<double>());
        break;
    case value_t::string:
        // nlohmann's own dump handles escaping, locale-free
        out += nlohmann::json(v.get<std::string>()).dump();
        break;
    case value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& item : v) {
            if (!first) out += ',';
            first = false;
            emit(item, out);
        }
        out += ']';
        break;
    }
    case value_t::object: {
        // nlohmann::json already stores object keys in sorted std::map order,
        // but sort explicitly so the contract does not hinge on that detail.
        std::map<std::string, const nlohmann::json*> sorted;
        for (auto it = v.begin(); it != v.end(); ++it) sorted.emplace(it.key(), &it.value());
        out += '{';
        bool first = true;
        for (const auto& [key, val] : sorted) {
            if (!first) out += ',';
            first = false;
            out += nlohmann::json(key).dump();
            out += ':';
            emit(*val, out);
        }
        out += '}';
        break;
    }
    default:
        throw std::invalid_argument("canonical_json: unsupported value type");
    }
}

} // namespace

std::string canonical_real(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("canonical_real: non-finite value");
    if (value == 0.0) value = 0.0; // collapse -0.0
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
    return std::string(buf, r.ptr);
}

std::string canonical_json(const nlohmann::json& value) {
    std::string out;
    out.reserve(256);
    emit(value, out);
    return out;
}

std::string canonical_hash(const nlohmann::json& value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_json(value))));
    return std::string(buf);
}

} // namespace aadg
