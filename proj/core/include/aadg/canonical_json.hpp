#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace aadg {

// Deterministic serialization used for hashing, manifests and record files:
// object keys sorted, every real number rendered fixed with six decimal
// places. Serialize -> parse -> serialize is byte-stable.
std::string canonical_json(const nlohmann::json& value);

// Fixed six-decimal rendering of a real ("5.0" -> "5.000000").
std::string canonical_real(double value);

// FNV-1a of the canonical serialization, as 16 hex digits.
std::string canonical_hash(const nlohmann::json& value);

} // namespace aadg
