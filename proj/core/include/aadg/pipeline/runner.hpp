#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "aadg/adapters/chat.hpp"
#include "aadg/adapters/embedding.hpp"
#include "aadg/adapters/tta.hpp"
#include "aadg/pipeline/config.hpp"

namespace aadg::pipeline {

enum class Stage { scenario, extract, plan_verify, judge, synth, audio_verify, merge, persist };
std::string_view to_string(Stage stage);

enum class StageStatus { ok, retried, failed };
std::string_view to_string(StageStatus status);

struct StageOutcome {
    Stage stage = Stage::scenario;
    StageStatus status = StageStatus::ok;
    int attempts = 0; // never exceeds the stage budget (per component where
                      // the budget is per component)
    std::vector<std::string> reasons; // one line per retry/failure
};

struct RecordOutcome {
    std::string record_id;
    int index = 0;
    bool completed = false;
    bool skipped = false; // resume found it in the manifest
    std::vector<StageOutcome> stages;
};

struct GateStats {
    int evaluated = 0;
    int accepted = 0;
    double rate() const { return evaluated ? static_cast<double>(accepted) / evaluated : 0.0; }
};

struct RunReport {
    int requested = 0;
    int completed = 0;
    int abandoned = 0;
    int skipped = 0; // resume: already in the manifest
    std::vector<RecordOutcome> records;
    GateStats prescreen, plan_logic, judge, alignment;
    double wall_time_s = 0.0;

    bool all_completed() const { return completed + skipped == requested; }
    nlohmann::json to_json() const;
};

struct Backends {
    std::shared_ptr<adapters::ChatBackend> chat;
    std::shared_ptr<adapters::ChatBackend> judge; // independent from chat
    std::shared_ptr<adapters::TextToAudioBackend> tta;
    std::shared_ptr<adapters::EmbeddingBackend> embed;
};

Backends make_offline_backends(const PipelineConfig& config);
// Reads AADG_* environment variables, probes each endpoint; throws
// FatalBackendError when anything is unreachable.
Backends make_live_backends(const PipelineConfig& config);

// Drives scenario -> extract -> verify -> synthesize -> verify-audio ->
// merge -> persist for each record index, with stage-local retries inside
// the configured budgets, then record abandonment. Record content depends
// only on (config, global_seed, index), never on worker interleaving.
RunReport run(const PipelineConfig& config);
RunReport run(const PipelineConfig& config, const Backends& backends);

} // namespace aadg::pipeline
