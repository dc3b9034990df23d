#include "aadg/pipeline/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "aadg/canonical_json.hpp"
#include "aadg/errors.hpp"

namespace aadg::pipeline {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const std::string& scope) {
    if (!j.is_object()) throw ConfigError("config: '" + scope + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + scope + it.key() + "'");
    }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config: bad value for '") + key + "'");
    }
}

} // namespace

PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig c;
    reject_unknown(j, {"n_records", "workers", "global_seed", "scenario", "plan", "verify", "audio",
                       "budgets", "adapters", "output_root", "template_dir", "log_level", "resume"},
                   "");

    read(j, "n_records", c.n_records);
    read(j, "workers", c.workers);
    read(j, "global_seed", c.global_seed);
    read(j, "output_root", c.output_root);
    read(j, "template_dir", c.template_dir);
    read(j, "log_level", c.log_level);
    read(j, "resume", c.resume);

    if (j.contains("scenario")) {
        const auto& s = j["scenario"];
        reject_unknown(s, {"anomaly_count", "scene_hint", "temperature", "max_scenario_chars",
                           "min_scenario_chars", "attempt_budget", "max_tokens"},
                       "scenario.");
        read(s, "anomaly_count", c.scenario.anomaly_count);
        if (s.contains("scene_hint") && !s["scene_hint"].is_null())
            c.scenario.scene_hint = s["scene_hint"].get<std::string>();
        read(s, "temperature", c.scenario.temperature);
        read(s, "max_scenario_chars", c.scenario.max_scenario_chars);
        read(s, "min_scenario_chars", c.scenario.min_scenario_chars);
        read(s, "attempt_budget", c.scenario.attempt_budget);
        read(s, "max_tokens", c.scenario.max_tokens);
    }

    if (j.contains("plan")) {
        const auto& p = j["plan"];
        reject_unknown(p, {"max_description_chars", "min_duration_s", "max_duration_s",
                           "default_duration_s", "extraction_repairs"},
                       "plan.");
        read(p, "max_description_chars", c.plan_limits.max_description_chars);
        read(p, "min_duration_s", c.plan_limits.min_duration_s);
        read(p, "max_duration_s", c.plan_limits.max_duration_s);
        read(p, "default_duration_s", c.plan_limits.default_duration_s);
        read(p, "extraction_repairs", c.extraction_repairs);
    }

    if (j.contains("verify")) {
        const auto& v = j["verify"];
        reject_unknown(v, {"alpha", "beta", "alignment_threshold", "judge_threshold",
                           "banned_terms_path"},
                       "verify.");
        read(v, "alpha", c.alignment.alpha);
        read(v, "beta", c.alignment.beta);
        read(v, "alignment_threshold", c.alignment.threshold);
        read(v, "judge_threshold", c.judge_threshold);
        read(v, "banned_terms_path", c.banned_terms_path);
    }

    if (j.contains("audio")) {
        const auto& a = j["audio"];
        reject_unknown(a, {"canonical_rate", "fade_seconds", "final_peak_dbfs",
                           "component_peak_dbfs"},
                       "audio.");
        read(a, "canonical_rate", c.canonical_rate);
        read(a, "fade_seconds", c.merge.fade_seconds);
        read(a, "final_peak_dbfs", c.merge.final_peak_dbfs);
        read(a, "component_peak_dbfs", c.component_peak_dbfs);
    }

    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        reject_unknown(b, {"scenario", "extraction", "judge", "synthesis", "audio_verify"},
                       "budgets.");
        read(b, "scenario", c.budgets.scenario);
        read(b, "extraction", c.budgets.extraction);
        read(b, "judge", c.budgets.judge);
        read(b, "synthesis", c.budgets.synthesis);
        read(b, "audio_verify", c.budgets.audio_verify);
    }

    if (j.contains("adapters")) {
        const auto& a = j["adapters"];
        reject_unknown(a, {"mode", "chat_endpoint", "chat_model", "judge_endpoint", "judge_model",
                           "tta_endpoint", "tta_command", "embed_endpoint", "requests_per_minute",
                           "stub_tta_sample_rate", "embed_dimension"},
                       "adapters.");
        std::string mode = "offline";
        read(a, "mode", mode);
        if (mode == "offline")
            c.adapters.mode = AdapterSettings::Mode::offline;
        else if (mode == "live")
            c.adapters.mode = AdapterSettings::Mode::live;
        else
            throw ConfigError("config: adapters.mode must be 'offline' or 'live'");
        read(a, "chat_endpoint", c.adapters.chat_endpoint);
        read(a, "chat_model", c.adapters.chat_model);
        read(a, "judge_endpoint", c.adapters.judge_endpoint);
        read(a, "judge_model", c.adapters.judge_model);
        read(a, "tta_endpoint", c.adapters.tta_endpoint);
        read(a, "tta_command", c.adapters.tta_command);
        read(a, "embed_endpoint", c.adapters.embed_endpoint);
        read(a, "requests_per_minute", c.adapters.requests_per_minute);
        read(a, "stub_tta_sample_rate", c.adapters.stub_tta_sample_rate);
        read(a, "embed_dimension", c.adapters.embed_dimension);
    }
    return c;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config: " + path + " is not valid JSON");
    return config_from_json(j);
}

nlohmann::json config_to_json(const PipelineConfig& c) {
    return {
        {"n_records", c.n_records},
        {"workers", c.workers},
        {"global_seed", c.global_seed},
        {"scenario",
         {{"anomaly_count", c.scenario.anomaly_count},
          {"scene_hint", c.scenario.scene_hint ? nlohmann::json(*c.scenario.scene_hint)
                                               : nlohmann::json(nullptr)},
          {"temperature", c.scenario.temperature},
          {"max_scenario_chars", c.scenario.max_scenario_chars},
          {"min_scenario_chars", c.scenario.min_scenario_chars},
          {"attempt_budget", c.scenario.attempt_budget},
          {"max_tokens", c.scenario.max_tokens}}},
        {"plan",
         {{"max_description_chars", c.plan_limits.max_description_chars},
          {"min_duration_s", c.plan_limits.min_duration_s},
          {"max_duration_s", c.plan_limits.max_duration_s},
          {"default_duration_s", c.plan_limits.default_duration_s},
          {"extraction_repairs", c.extraction_repairs}}},
        {"verify",
         {{"alpha", c.alignment.alpha},
          {"beta", c.alignment.beta},
          {"alignment_threshold", c.alignment.threshold},
          {"judge_threshold", c.judge_threshold},
          {"banned_terms_path", c.banned_terms_path}}},
        {"audio",
         {{"canonical_rate", c.canonical_rate},
          {"fade_seconds", c.merge.fade_seconds},
          {"final_peak_dbfs", c.merge.final_peak_dbfs},
          {"component_peak_dbfs", c.component_peak_dbfs}}},
        {"budgets",
         {{"scenario", c.budgets.scenario},
          {"extraction", c.budgets.extraction},
          {"judge", c.budgets.judge},
          {"synthesis", c.budgets.synthesis},
          {"audio_verify", c.budgets.audio_verify}}},
        {"adapters",
         {{"mode", c.adapters.mode == AdapterSettings::Mode::offline ? "offline" : "live"},
          {"chat_endpoint", c.adapters.chat_endpoint},
          {"chat_model", c.adapters.chat_model},
          {"judge_endpoint", c.adapters.judge_endpoint},
          {"judge_model", c.adapters.judge_model},
          {"tta_endpoint", c.adapters.tta_endpoint},
          {"tta_command", c.adapters.tta_command},
          {"embed_endpoint", c.adapters.embed_endpoint},
          {"requests_per_minute", c.adapters.requests_per_minute},
          {"stub_tta_sample_rate", c.adapters.stub_tta_sample_rate},
          {"embed_dimension", c.adapters.embed_dimension}}},
        {"output_root", c.output_root},
        {"template_dir", c.template_dir},
        {"log_level", c.log_level},
        {"resume", c.resume},
    };
}

std::string config_hash(const PipelineConfig& config) {
    // resume/log_level do not change record content
    auto j = config_to_json(config);
    j.erase("resume");
    j.erase("log_level");
    j.erase("n_records");
    j.erase("workers");
    j.erase("output_root");
    return canonical_hash(j);
}

void validate(const PipelineConfig& c) {
    if (c.n_records < 1) throw ConfigError("config: n_records must be >= 1");
    if (c.workers < 1) throw ConfigError("config: workers must be >= 1");
    if (c.scenario.anomaly_count < 0) throw ConfigError("config: scenario.anomaly_count must be >= 0");
    if (c.scenario.temperature < 0.0 || c.scenario.temperature > 2.0)
        throw ConfigError("config: scenario.temperature must be within [0, 2]");
    if (c.alignment.alpha <= 0.0) throw ConfigError("config: verify.alpha must be > 0");
    if (c.judge_threshold < 1 || c.judge_threshold > 10)
        throw ConfigError("config: verify.judge_threshold must be within [1, 10]");
    if (c.canonical_rate <= 0) throw ConfigError("config: audio.canonical_rate must be positive");
    if (c.merge.fade_seconds < 0) throw ConfigError("config: audio.fade_seconds must be >= 0");
    if (c.merge.final_peak_dbfs > 0 || c.component_peak_dbfs > 0)
        throw ConfigError("config: normalization targets must be <= 0 dBFS");
    if (c.plan_limits.min_duration_s <= 0 ||
        c.plan_limits.max_duration_s < c.plan_limits.min_duration_s)
        throw ConfigError("config: bad plan duration bounds");
    if (c.budgets.scenario < 1 || c.budgets.extraction < 1 || c.budgets.judge < 1 ||
        c.budgets.synthesis < 1 || c.budgets.audio_verify < 1)
        throw ConfigError("config: stage budgets must be >= 1");
    if (!c.banned_terms_path.empty() && !std::filesystem::exists(c.banned_terms_path))
        throw ConfigError("config: banned terms file not found: " + c.banned_terms_path);
    if (!c.template_dir.empty() && !std::filesystem::is_directory(c.template_dir))
        throw ConfigError("config: template_dir not found: " + c.template_dir);
    if (c.adapters.requests_per_minute <= 0)
        throw ConfigError("config: adapters.requests_per_minute must be > 0");
    if (c.adapters.embed_dimension <= 0)
        throw ConfigError("config: adapters.embed_dimension must be positive");
}

void apply_override(nlohmann::json& config_json, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like section.key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    nlohmann::json* node = &config_json;
    std::size_t start = 0;
    for (;;) {
        auto dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError("override has an empty path segment: " + assignment);
        if (dot == std::string::npos) {
            auto parsed = nlohmann::json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

} // namespace aadg::pipeline
