#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace aadg::plan {

struct SoundComponent {
    int index = 0; // position in the components list
    std::string description;
    bool is_anomaly = false;
    double duration_s = 5.0;
};

// Structured extraction result. Deliberately a plain struct: verification
// needs to represent invalid states (unknown merge names, bad order lists),
// so invariants are checked by functions, not the constructor.
struct ScenePlan {
    std::string summary;
    std::string anomaly;
    std::string anomaly_rationale;
    std::vector<SoundComponent> components;
    std::vector<int> order;
    std::vector<std::string> merge_types;
};

inline const std::vector<std::string>& merge_type_names() {
    static const std::vector<std::string> names = {"crossfade", "overlay", "fade_in", "fade_out"};
    return names;
}

bool is_known_merge_type(std::string_view name);
bool is_permutation(const std::vector<int>& order, std::size_t n);

nlohmann::json to_json(const ScenePlan& plan);

// Field mapping only; returns nullopt and fills `errors` when required
// fields are missing or of the wrong type. Value-level rules live in
// check_plan / verify_plan_logic.
std::optional<ScenePlan> plan_from_json(const nlohmann::json& j, std::vector<std::string>& errors);

// Deterministic serialization for hashing and manifest storage.
std::string plan_to_canonical_json(const ScenePlan& plan);

struct PlanLimits {
    std::size_t max_description_chars = 120;
    double min_duration_s = 1.0;
    double max_duration_s = 30.0;
    double default_duration_s = 5.0;
};

// Structural rules enforced at extraction time: equal list lengths, order a
// permutation, exactly `expected_anomalies` anomalous components, non-empty
// descriptions within the length cap, known merge types. Returns problem
// descriptions suitable for a repair prompt; empty means pass.
std::vector<std::string> check_plan(const ScenePlan& plan, int expected_anomalies,
                                    const PlanLimits& limits);

// duration_s outside [min, max] is clamped; non-finite resets to the default.
void clamp_durations(ScenePlan& plan, const PlanLimits& limits);

// Published JSON schema document for the plan (stored alongside manifests).
nlohmann::json plan_json_schema();
inline constexpr std::string_view kPlanSchemaVersion = "aadg-plan/1";

} // namespace aadg::plan
