#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aadg/adapters/chat.hpp"
#include "aadg/prompts.hpp"

namespace aadg::scenario {

struct ScenarioConfig {
    int anomaly_count = 1;
    std::optional<std::string> scene_hint;
    double temperature = 0.9; // higher is more creative but less stable
    int max_scenario_chars = 2000;
    int min_scenario_chars = 40;
    int attempt_budget = 3;
    int max_tokens = 800;
    std::string template_id = "scenario_v1";
};

struct Scenario {
    std::string text;
    ScenarioConfig config_snapshot;
    std::optional<std::int64_t> generation_seed;
};

// Prompts the chat backend for a scene with exactly anomaly_count anomalous
// sound events, pre-screens each reply for nonsense text and length, and
// retries within the attempt budget. Rejection reasons, one line per failed
// attempt, are appended to *rejections when provided.
// Throws GenerationExhausted when every attempt fails the pre-screen.
Scenario generate_scenario(adapters::ChatBackend& chat, const ScenarioConfig& config,
                           const prompts::TemplateSet& templates,
                           std::optional<std::int64_t> seed = std::nullopt,
                           std::vector<std::string>* rejections = nullptr);

} // namespace aadg::scenario
