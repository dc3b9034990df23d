#include "aadg/plan/extraction.hpp"

#include <cctype>

#include "aadg/errors.hpp"

namespace aadg::plan {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_fences(std::string_view s) {
    s = trim(s);
    if (s.substr(0, 3) != "```") return s;
    auto first_eol = s.find('\n');
    if (first_eol == std::string_view::npos) return s;
    auto closing = s.rfind("```");
    if (closing <= first_eol) return s;
    return trim(s.substr(first_eol + 1, closing - first_eol - 1));
}

// drop commas that directly precede a closing bracket, outside strings
std::string strip_trailing_commas(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            out += c;
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            continue;
        }
        if (c == ',') {
            std::size_t j = i + 1;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && (s[j] == '}' || s[j] == ']')) continue; // skip the comma
        }
        out += c;
    }
    return out;
}

std::string schema_prompt_text() {
    return "  summary: string\n"
           "  anomaly: string\n"
           "  anomaly_rationale: string\n"
           "  components: array of {description: string, is_anomaly: boolean, duration_s: number "
           "(seconds)}\n"
           "  order: array of integers\n"
           "  merge_types: array of strings\n";
}

} // namespace

std::optional<nlohmann::json> tolerant_json_parse(std::string_view text) {
    std::string cleaned = strip_trailing_commas(strip_fences(text));
    auto parsed = nlohmann::json::parse(cleaned, nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
    return parsed;
}

ScenePlan extract_plan(adapters::ChatBackend& chat, const scenario::Scenario& scenario,
                       const ExtractionConfig& config, const prompts::TemplateSet& templates,
                       int* attempts_out) {
    const auto& tpl = templates.extraction();
    std::map<std::string, std::string> values = {
        {"scenario", scenario.text},
        {"schema", schema_prompt_text()},
        {"max_desc", std::to_string(config.limits.max_description_chars)},
        {"anomaly_count", std::to_string(config.expected_anomalies)},
    };
    const std::string base_prompt = prompts::render(tpl.user, values);

    adapters::ChatRequest request;
    request.system_prompt = tpl.system;
    request.user_prompt = base_prompt;
    request.temperature = config.temperature;
    request.max_tokens = config.max_tokens;
    request.seed = config.seed;

    std::vector<std::string> errors;
    for (int attempt = 0; attempt <= config.repair_budget; ++attempt) {
        if (attempt > 0) {
            std::string repair = base_prompt + "\n\nYour previous reply failed validation:\n";
            for (const auto& e : errors) repair += "- " + e + "\n";
            repair += "Reply again with only the corrected JSON object.";
            request.user_prompt = repair;
            if (request.seed) request.seed = *request.seed + 1;
        }
        auto response = chat.complete(request);
        if (attempts_out) *attempts_out = attempt + 1;

        errors.clear();
        auto parsed = tolerant_json_parse(response.text);
        if (!parsed) {
            errors.push_back("reply is not valid JSON");
            continue;
        }
        auto plan = plan_from_json(*parsed, errors);
        if (!plan) continue;

        clamp_durations(*plan, config.limits);
        errors = check_plan(*plan, config.expected_anomalies, config.limits);
        if (errors.empty()) return *plan;
    }

    std::string detail = "extraction: invalid after " + std::to_string(config.repair_budget) +
                         " repair(s):";
    for (const auto& e : errors) detail += " " + e + ";";
    throw ExtractionSchemaError(detail);
}

} // namespace aadg::plan
