#include <cctype>

#include "aadg/errors.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::verify {

std::optional<int> parse_judge_score(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t end = i;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            if (end - i <= 2) {
                int value = std::stoi(std::string(text.substr(i, end - i)));
                if (value >= 1 && value <= 10) return value;
            }
            i = end;
        } else {
            ++i;
        }
    }
    return std::nullopt;
}

JudgeVerdict judge_plan(adapters::ChatBackend& judge, const scenario::Scenario& scenario,
                        const plan::ScenePlan& plan, const JudgeConfig& config,
                        const prompts::TemplateSet& templates) {
    const auto& tpl = templates.judge();
    std::map<std::string, std::string> values = {
        {"scenario", scenario.text},
        {"plan_json", plan::plan_to_canonical_json(plan)},
    };

    adapters::ChatRequest request;
    request.system_prompt = tpl.system;
    request.user_prompt = prompts::render(tpl.user, values);
    request.temperature = config.temperature;
    request.max_tokens = config.max_tokens;
    request.seed = config.seed;

    std::string last_reply;
    for (int attempt = 0; attempt <= config.repair_budget; ++attempt) {
        if (attempt > 0) {
            request.user_prompt = prompts::render(tpl.user, values) +
                                  "\n\nYour previous reply could not be scored. Reply with a single "
                                  "integer between 1 and 10 on the first line.";
            if (request.seed) request.seed = *request.seed + 1;
        }
        auto response = judge.complete(request);
        last_reply = response.text;
        if (auto score = parse_judge_score(response.text)) {
            JudgeVerdict verdict;
            verdict.score = *score;
            verdict.rationale = response.text;
            verdict.pass = *score >= config.threshold;
            return verdict;
        }
    }
    throw JudgeUnparseable("judge: no integer 1-10 in reply: " + last_reply.substr(0, 120));
}

} // namespace aadg::verify
