#pragma once

#include <optional>

#include "aadg/adapters/chat.hpp"
#include "aadg/plan/scene_plan.hpp"
#include "aadg/prompts.hpp"
#include "aadg/scenario/scenario.hpp"

namespace aadg::plan {

struct ExtractionConfig {
    int repair_budget = 2; // round-trips quoting validation errors back
    int expected_anomalies = 1;
    PlanLimits limits;
    double temperature = 0.2;
    int max_tokens = 1200;
    std::optional<std::int64_t> seed;
};

// Strips markdown code fences and trailing commas, then parses strictly.
// Returns nullopt when the text still is not valid JSON.
std::optional<nlohmann::json> tolerant_json_parse(std::string_view text);

// Second model call: scenario in, structured plan out. Parses the reply,
// enforces the structural invariants (equal list lengths, permutation,
// anomaly count, description limits), clamps durations, and on failure
// issues repair round-trips quoting the validation errors. Throws
// ExtractionSchemaError once the repair budget is spent.
ScenePlan extract_plan(adapters::ChatBackend& chat, const scenario::Scenario& scenario,
                       const ExtractionConfig& config, const prompts::TemplateSet& templates,
                       int* attempts_out = nullptr);

} // namespace aadg::plan
