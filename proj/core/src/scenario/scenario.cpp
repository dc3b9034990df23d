#include "aadg/scenario/scenario.hpp"

#include "aadg/errors.hpp"
#include "aadg/rng.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::scenario {

Scenario generate_scenario(adapters::ChatBackend& chat, const ScenarioConfig& config,
                           const prompts::TemplateSet& templates, std::optional<std::int64_t> seed,
                           std::vector<std::string>* rejections) {
    if (config.anomaly_count < 0)
        throw std::invalid_argument("scenario config: anomaly_count must be >= 0");
    if (config.max_scenario_chars <= 0 || config.attempt_budget < 1)
        throw std::invalid_argument("scenario config: bad bounds");

    const auto& tpl = templates.scenario();
    std::map<std::string, std::string> values = {
        {"anomaly_count", std::to_string(config.anomaly_count)},
        {"scene_hint", config.scene_hint ? " set in " + *config.scene_hint : ""},
        {"max_chars", std::to_string(config.max_scenario_chars)},
    };

    adapters::ChatRequest request;
    request.system_prompt = tpl.system;
    request.user_prompt = prompts::render(tpl.user, values);
    request.temperature = config.temperature;
    request.max_tokens = config.max_tokens;

    for (int attempt = 0; attempt < config.attempt_budget; ++attempt) {
        if (seed)
            request.seed = static_cast<std::int64_t>(
                combine_seed(static_cast<std::uint64_t>(*seed), static_cast<std::uint64_t>(attempt)));
        auto response = chat.complete(request);

        auto violations = verify::prescreen_text(response.text, config.min_scenario_chars,
                                                 config.max_scenario_chars);
        if (violations.empty()) {
            Scenario scenario;
            scenario.text = response.text;
            scenario.config_snapshot = config;
            scenario.generation_seed = request.seed;
            return scenario;
        }
        if (rejections) {
            for (const auto& v : violations)
                rejections->push_back("attempt " + std::to_string(attempt + 1) + ": " +
                                      std::string(verify::to_string(v.code)) + " (" + v.detail + ")");
        }
    }
    throw GenerationExhausted("scenario: all " + std::to_string(config.attempt_budget) +
                              " attempts failed the pre-screen");
}

} // namespace aadg::scenario
