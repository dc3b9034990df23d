#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

#include "aadg/audio/merge.hpp"
#include "aadg/plan/scene_plan.hpp"
#include "aadg/scenario/scenario.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::pipeline {

struct StageBudgets {
    int scenario = 3;     // generation attempts (pre-screen gated)
    int extraction = 2;   // full extraction attempts after a logic failure
    int judge = 2;        // judge attempts, each on a freshly extracted plan
    int synthesis = 3;    // transport/duration retries per component
    int audio_verify = 2; // re-synthesis rounds with a perturbed seed
};

struct AdapterSettings {
    enum class Mode { offline, live };

    Mode mode = Mode::offline;
    std::string chat_endpoint;  // env AADG_CHAT_ENDPOINT overrides
    std::string chat_model = "default";
    std::string judge_endpoint; // falls back to the chat endpoint
    std::string judge_model;    // falls back to chat_model
    std::string tta_endpoint;   // env AADG_TTA_ENDPOINT overrides
    std::string tta_command;    // subprocess alternative to the endpoint
    std::string embed_endpoint; // env AADG_EMBED_ENDPOINT overrides
    double requests_per_minute = 60.0;
    int stub_tta_sample_rate = 16000;
    int embed_dimension = 1024;
};

struct PipelineConfig {
    int n_records = 1;
    int workers = 1;
    std::uint64_t global_seed = 0;

    scenario::ScenarioConfig scenario;
    plan::PlanLimits plan_limits;
    int extraction_repairs = 2;

    verify::AlignmentParams alignment; // alpha, beta, threshold
    int judge_threshold = 7;
    std::string banned_terms_path; // empty -> built-in defaults

    int canonical_rate = 16000;
    audio::MergeParams merge;          // fade_seconds, final_peak_dbfs
    double component_peak_dbfs = -3.0; // pre-merge component level

    StageBudgets budgets;
    AdapterSettings adapters;

    std::string output_root = "dataset";
    std::string template_dir; // empty -> compiled-in templates
    std::string log_level = "info";
    bool resume = false;
};

// Missing keys keep their defaults; unknown keys are rejected so typos in a
// config file fail loudly. Throws ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config_file(const std::string& path);

nlohmann::json config_to_json(const PipelineConfig& config);

// hash of the canonical config serialization; stored in record provenance
std::string config_hash(const PipelineConfig& config);

// Structural validation: counts, bounds, referenced paths. Throws ConfigError.
void validate(const PipelineConfig& config);

// Applies one "dotted.path=value" override onto the JSON form of a config.
void apply_override(nlohmann::json& config_json, const std::string& assignment);

} // namespace aadg::pipeline
