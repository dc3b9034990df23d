#include "aadg/pipeline/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "aadg/adapters/http.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/audio/ops.hpp"
#include "aadg/audio/wav.hpp"
#include "aadg/canonical_json.hpp"
#include "aadg/dataset/manifest.hpp"
#include "aadg/errors.hpp"
#include "aadg/pipeline/log.hpp"
#include "aadg/plan/extraction.hpp"
#include "aadg/rng.hpp"
#include "aadg/scenario/scenario.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::pipeline {

std::string_view to_string(Stage stage) {
    switch (stage) {
    case Stage::scenario: return "scenario";
    case Stage::extract: return "extract";
    case Stage::plan_verify: return "plan_verify";
    case Stage::judge: return "judge";
    case Stage::synth: return "synth";
    case Stage::audio_verify: return "audio_verify";
    case Stage::merge: return "merge";
    case Stage::persist: return "persist";
    }
    return "?";
}

std::string_view to_string(StageStatus status) {
    switch (status) {
    case StageStatus::ok: return "ok";
    case StageStatus::retried: return "retried";
    case StageStatus::failed: return "failed";
    }
    return "?";
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json stages = nlohmann::json::array();
        for (const auto& s : r.stages)
            stages.push_back({{"stage", std::string(to_string(s.stage))},
                              {"status", std::string(to_string(s.status))},
                              {"attempts", s.attempts},
                              {"reasons", s.reasons}});
        recs.push_back({{"record_id", r.record_id},
                        {"index", r.index},
                        {"completed", r.completed},
                        {"skipped", r.skipped},
                        {"stages", stages}});
    }
    auto gate = [](const GateStats& g) {
        return nlohmann::json{{"evaluated", g.evaluated}, {"accepted", g.accepted}, {"rate", g.rate()}};
    };
    return {{"requested", requested},
            {"completed", completed},
            {"abandoned", abandoned},
            {"skipped", skipped},
            {"gates",
             {{"prescreen", gate(prescreen)},
              {"plan_logic", gate(plan_logic)},
              {"judge", gate(judge)},
              {"alignment", gate(alignment)}}},
            {"wall_time_s", wall_time_s},
            {"records", recs}};
}

Backends make_offline_backends(const PipelineConfig& config) {
    Backends b;
    b.chat = std::make_shared<adapters::StubChatBackend>(0, "stub-chat");
    b.judge = std::make_shared<adapters::StubChatBackend>(1, "stub-judge");
    adapters::SynthesisBounds bounds{config.plan_limits.min_duration_s,
                                     config.plan_limits.max_duration_s};
    b.tta = std::make_shared<adapters::StubTextToAudio>(config.adapters.stub_tta_sample_rate, bounds);
    b.embed = std::make_shared<adapters::StubEmbedding>(config.adapters.embed_dimension);
    return b;
}

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

} // namespace

Backends make_live_backends(const PipelineConfig& config) {
    const auto& a = config.adapters;
    std::string chat_endpoint = env_or("AADG_CHAT_ENDPOINT", a.chat_endpoint);
    std::string tta_endpoint = env_or("AADG_TTA_ENDPOINT", a.tta_endpoint);
    std::string embed_endpoint = env_or("AADG_EMBED_ENDPOINT", a.embed_endpoint);
    std::string judge_endpoint = a.judge_endpoint.empty() ? chat_endpoint : a.judge_endpoint;

    if (chat_endpoint.empty())
        throw FatalBackendError("live mode: no chat endpoint (AADG_CHAT_ENDPOINT or adapters.chat_endpoint)");
    if (tta_endpoint.empty() && a.tta_command.empty())
        throw FatalBackendError("live mode: no text-to-audio endpoint or command");
    if (embed_endpoint.empty())
        throw FatalBackendError("live mode: no embedding endpoint (AADG_EMBED_ENDPOINT)");

    auto probe = [](const std::string& endpoint, const char* what) {
        try {
            adapters::probe_endpoint(endpoint, 5.0);
        } catch (const TransportError& e) {
            throw FatalBackendError(std::string(what) + ": " + e.what());
        }
    };
    probe(chat_endpoint, "chat backend");
    if (judge_endpoint != chat_endpoint) probe(judge_endpoint, "judge backend");
    if (!tta_endpoint.empty()) probe(tta_endpoint, "text-to-audio backend");
    probe(embed_endpoint, "embedding backend");

    auto limiter = std::make_shared<adapters::TokenBucket>(a.requests_per_minute,
                                                           std::max(1.0, a.requests_per_minute / 10.0));

    Backends b;
    adapters::HttpChatConfig chat_cfg;
    chat_cfg.endpoint = chat_endpoint;
    chat_cfg.model = a.chat_model;
    chat_cfg.limiter = limiter;
    b.chat = std::make_shared<adapters::HttpChatBackend>(chat_cfg);

    adapters::HttpChatConfig judge_cfg = chat_cfg;
    judge_cfg.endpoint = judge_endpoint;
    judge_cfg.model = a.judge_model.empty() ? a.chat_model : a.judge_model;
    judge_cfg.backend_id = "http-judge";
    b.judge = std::make_shared<adapters::HttpChatBackend>(judge_cfg);

    adapters::SynthesisBounds bounds{config.plan_limits.min_duration_s,
                                     config.plan_limits.max_duration_s};
    if (!tta_endpoint.empty()) {
        adapters::HttpTtaConfig tta_cfg;
        tta_cfg.endpoint = tta_endpoint;
        tta_cfg.limiter = limiter;
        tta_cfg.bounds = bounds;
        b.tta = std::make_shared<adapters::HttpTextToAudio>(tta_cfg);
    } else {
        adapters::SubprocessTtaConfig tta_cfg;
        tta_cfg.command = a.tta_command;
        tta_cfg.bounds = bounds;
        b.tta = std::make_shared<adapters::SubprocessTextToAudio>(tta_cfg);
    }

    adapters::HttpEmbeddingConfig embed_cfg;
    embed_cfg.endpoint = embed_endpoint;
    embed_cfg.limiter = limiter;
    b.embed = std::make_shared<adapters::HttpEmbedding>(embed_cfg);
    return b;
}

namespace {

struct GateCounters {
    std::atomic<int> prescreen_eval{0}, prescreen_ok{0};
    std::atomic<int> logic_eval{0}, logic_ok{0};
    std::atomic<int> judge_eval{0}, judge_ok{0};
    std::atomic<int> align_eval{0}, align_ok{0};
};

struct RecordContext {
    const PipelineConfig& config;
    const Backends& backends;
    const prompts::TemplateSet& templates;
    const verify::BannedTerms& banned;
    dataset::ManifestWriter& writer;
    const std::string& cfg_hash;
    GateCounters& gates;
};

std::string make_record_id(int index, std::uint64_t record_seed) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "rec-%06d-%08llx", index,
                  static_cast<unsigned long long>(record_seed >> 32));
    return buf;
}

StageOutcome make_outcome(Stage stage, StageStatus status, int attempts,
                          std::vector<std::string> reasons = {}) {
    return {stage, status, attempts, std::move(reasons)};
}

// One record, strictly sequential stages. Returns the outcome; never throws
// for stage-level failures (those abandon the record), only for fatal
// environment problems.
RecordOutcome build_record(int index, const RecordContext& ctx) {
    auto& log = Logger::global();
    const auto& config = ctx.config;
    const std::uint64_t record_seed = combine_seed(config.global_seed, static_cast<std::uint64_t>(index));
    RecordOutcome outcome;
    outcome.index = index;
    outcome.record_id = make_record_id(index, record_seed);
    const std::string& rid = outcome.record_id;

    dataset::DatasetRecord record;
    record.record_id = rid;
    record.sample_rate = config.canonical_rate;
    record.provenance.global_seed = config.global_seed;
    record.provenance.record_seed = record_seed;
    record.provenance.scenario_template_id = ctx.templates.scenario().id;
    record.provenance.extraction_template_id = ctx.templates.extraction().id;
    record.provenance.judge_template_id = ctx.templates.judge().id;
    record.provenance.config_hash = ctx.cfg_hash;

    // ---- scenario ----
    scenario::Scenario scen;
    {
        std::vector<std::string> rejections;
        auto seed = static_cast<std::int64_t>(combine_seed(record_seed, fnv1a("scenario")));
        try {
            scen = generate_scenario(*ctx.backends.chat, config.scenario, ctx.templates, seed,
                                     &rejections);
        } catch (const GenerationExhausted& e) {
            ctx.gates.prescreen_eval += config.scenario.attempt_budget;
            outcome.stages.push_back(make_outcome(Stage::scenario, StageStatus::failed,
                                                  config.scenario.attempt_budget,
                                                  std::move(rejections)));
            log.log(LogLevel::warn, rid, "scenario", e.what());
            return outcome;
        }
        const int attempts = static_cast<int>(rejections.size()) + 1;
        ctx.gates.prescreen_eval += attempts;
        ctx.gates.prescreen_ok += 1;
        outcome.stages.push_back(make_outcome(
            Stage::scenario, attempts > 1 ? StageStatus::retried : StageStatus::ok, attempts,
            std::move(rejections)));
        record.provenance.attempt_counts["scenario"] = attempts;
        record.scenario = scen.text;
        log.log(LogLevel::debug, rid, "scenario", "accepted", {{"chars", scen.text.size()}});
    }

    // ---- extract + logic verify + judge ----
    // A rejected judgement regenerates the plan (fresh extraction), each
    // stage drawing from its own budget; whichever budget runs dry first
    // abandons the record.
    plan::ScenePlan plan;
    verify::JudgeVerdict verdict;
    {
        bool accepted = false;
        bool have_plan = false;
        int extract_attempts = 0, judge_attempts = 0;
        std::vector<std::string> extract_reasons, logic_reasons, judge_reasons;

        while (judge_attempts < config.budgets.judge) {
            while (!have_plan && extract_attempts < config.budgets.extraction) {
                ++extract_attempts;
                plan::ExtractionConfig ex;
                ex.repair_budget = config.extraction_repairs;
                ex.expected_anomalies = config.scenario.anomaly_count;
                ex.limits = config.plan_limits;
                ex.seed = static_cast<std::int64_t>(combine_seed(
                    record_seed,
                    fnv1a_u64(static_cast<std::uint64_t>(extract_attempts), fnv1a("extract"))));
                try {
                    plan = extract_plan(*ctx.backends.chat, scen, ex, ctx.templates);
                } catch (const ExtractionSchemaError& e) {
                    extract_reasons.push_back(e.what());
                    continue;
                }
                ctx.gates.logic_eval += 1;
                auto violations = verify_plan_logic(plan, ctx.banned);
                if (violations.empty()) {
                    ctx.gates.logic_ok += 1;
                    have_plan = true;
                } else {
                    for (const auto& v : violations)
                        logic_reasons.push_back(std::string(verify::to_string(v.code)) + " at " +
                                                v.location + ": " + v.detail);
                }
            }
            if (!have_plan) break;

            ++judge_attempts;
            verify::JudgeConfig jc;
            jc.threshold = config.judge_threshold;
            jc.seed = static_cast<std::int64_t>(combine_seed(
                record_seed, fnv1a_u64(static_cast<std::uint64_t>(judge_attempts), fnv1a("judge"))));
            try {
                verdict = judge_plan(*ctx.backends.judge, scen, plan, jc, ctx.templates);
            } catch (const JudgeUnparseable& e) {
                judge_reasons.push_back(e.what());
                have_plan = false;
                continue;
            }
            ctx.gates.judge_eval += 1;
            if (verdict.pass) {
                ctx.gates.judge_ok += 1;
                accepted = true;
                break;
            }
            judge_reasons.push_back("score " + std::to_string(verdict.score) + " below threshold " +
                                    std::to_string(config.judge_threshold));
            have_plan = false; // regenerate the plan for the next round
        }

        outcome.stages.push_back(make_outcome(
            Stage::extract,
            extract_reasons.empty()
                ? StageStatus::ok
                : (accepted || have_plan ? StageStatus::retried : StageStatus::failed),
            extract_attempts, extract_reasons));
        outcome.stages.push_back(make_outcome(
            Stage::plan_verify,
            logic_reasons.empty()
                ? StageStatus::ok
                : (accepted || have_plan ? StageStatus::retried : StageStatus::failed),
            static_cast<int>(logic_reasons.size()), logic_reasons));
        outcome.stages.push_back(make_outcome(
            Stage::judge,
            judge_reasons.empty() ? StageStatus::ok
                                  : (accepted ? StageStatus::retried : StageStatus::failed),
            judge_attempts, judge_reasons));

        if (!accepted) {
            log.log(LogLevel::warn, rid, "judge", "plan rejected, record abandoned");
            return outcome;
        }
        record.provenance.attempt_counts["extract"] = extract_attempts;
        record.provenance.attempt_counts["judge"] = judge_attempts;
        record.summary = plan.summary;
        record.anomaly = plan.anomaly;
        record.anomaly_rationale = plan.anomaly_rationale;
        record.order = plan.order;
        record.merge_types = plan.merge_types;
        record.verification.judge_score = verdict.score;
        record.verification.violations_count = 0; // logic gate passed
    }

    // ---- synthesize + alignment-verify each component ----
    // Failed alignment re-synthesizes the same component with a perturbed
    // seed (cheapest recovery) before the record is given up on. Budgets are
    // per component.
    const std::size_t n_components = plan.components.size();
    std::vector<audio::AudioClip> clips(n_components);
    record.verification.alignment.resize(n_components);
    record.provenance.component_seeds.resize(n_components, 0);
    {
        int synth_attempts_total = 0, verify_rounds_total = 0;
        int synth_attempts_max = 0, verify_rounds_max = 0;
        std::vector<std::string> synth_reasons, align_reasons;
        bool synth_failed = false, align_failed = false;

        for (std::size_t comp = 0; comp < n_components && !synth_failed && !align_failed; ++comp) {
            const auto& desc = plan.components[comp].description;
            bool aligned = false;
            int synth_attempts = 0, verify_rounds = 0;
            for (int round = 0; round < config.budgets.audio_verify && !aligned; ++round) {
                ++verify_rounds;
                auto seed = static_cast<std::int64_t>(combine_seed(
                    record_seed,
                    fnv1a_u64(static_cast<std::uint64_t>(comp * 8 + static_cast<std::size_t>(round)),
                              fnv1a("synth"))));

                audio::AudioClip clip;
                bool have_clip = false;
                while (synth_attempts < config.budgets.synthesis && !have_clip) {
                    ++synth_attempts;
                    try {
                        clip = ctx.backends.tta->synthesize(
                            {desc, plan.components[comp].duration_s, seed + synth_attempts - 1});
                        have_clip = true;
                    } catch (const TransportError& e) {
                        synth_reasons.push_back("component " + std::to_string(comp) + ": " + e.what());
                    } catch (const DurationMismatch& e) {
                        synth_reasons.push_back("component " + std::to_string(comp) + ": " + e.what());
                    }
                }
                if (!have_clip) {
                    synth_failed = true;
                    break;
                }

                clip = audio::resample(clip, config.canonical_rate);
                clip = audio::normalize(clip, config.component_peak_dbfs);
                clip.source_component = static_cast<int>(comp);

                ctx.gates.align_eval += 1;
                auto score = verify::verify_audio_alignment(*ctx.backends.embed, clip, desc,
                                                            config.alignment);
                if (score.pass) {
                    ctx.gates.align_ok += 1;
                    aligned = true;
                    clips[comp] = std::move(clip);
                    record.verification.alignment[comp] = score;
                    record.provenance.component_seeds[comp] = seed;
                } else {
                    align_reasons.push_back("component " + std::to_string(comp) + ": regularized " +
                                            std::to_string(score.regularized) + " below " +
                                            std::to_string(config.alignment.threshold));
                }
            }
            synth_attempts_total += synth_attempts;
            verify_rounds_total += verify_rounds;
            synth_attempts_max = std::max(synth_attempts_max, synth_attempts);
            verify_rounds_max = std::max(verify_rounds_max, verify_rounds);
            if (!aligned && !synth_failed) align_failed = true;
        }

        outcome.stages.push_back(make_outcome(
            Stage::synth,
            synth_failed ? StageStatus::failed
                         : (synth_reasons.empty() ? StageStatus::ok : StageStatus::retried),
            synth_attempts_max, synth_reasons));
        outcome.stages.push_back(make_outcome(
            Stage::audio_verify,
            align_failed ? StageStatus::failed
                         : (align_reasons.empty() ? StageStatus::ok : StageStatus::retried),
            verify_rounds_max, align_reasons));
        if (synth_failed || align_failed) {
            log.log(LogLevel::warn, rid, synth_failed ? "synth" : "audio_verify",
                    "component rejected, record abandoned");
            return outcome;
        }
        record.provenance.attempt_counts["synth"] = synth_attempts_total;
        record.provenance.attempt_counts["audio_verify"] = verify_rounds_total;
    }

    // ---- merge ----
    audio::MergeResult merged;
    try {
        merged = audio::merge_sequence(plan, clips, config.merge);
    } catch (const std::exception& e) {
        outcome.stages.push_back(make_outcome(Stage::merge, StageStatus::failed, 1, {e.what()}));
        log.log(LogLevel::error, rid, "merge", e.what());
        return outcome;
    }
    outcome.stages.push_back(make_outcome(Stage::merge, StageStatus::ok, 1));
    record.ledger = merged.ledger;
    record.provenance.overlay_rescale_factors = merged.step_rescale_factors;

    // ---- persist ----
    try {
        const auto root = std::filesystem::path(config.output_root);
        const auto dir = dataset::record_dir(root, rid);
        std::filesystem::create_directories(dir / "components");

        const auto rel = std::filesystem::path("records") / rid;
        record.final_wav_path = (rel / "final.wav").string();
        audio::write_wav(merged.mix, root / record.final_wav_path, audio::WavEncoding::float32);
        for (std::size_t i = 0; i < n_components; ++i) {
            dataset::ComponentFile cf;
            cf.description = plan.components[i].description;
            cf.is_anomaly = plan.components[i].is_anomaly;
            cf.wav_path = (rel / "components" / (std::to_string(i) + ".wav")).string();
            audio::write_wav(clips[i], root / cf.wav_path, audio::WavEncoding::float32);
            record.components.push_back(std::move(cf));
        }
        ctx.writer.write_record(record);
    } catch (const std::exception& e) {
        outcome.stages.push_back(make_outcome(Stage::persist, StageStatus::failed, 1, {e.what()}));
        log.log(LogLevel::error, rid, "persist", e.what());
        return outcome;
    }
    outcome.stages.push_back(make_outcome(Stage::persist, StageStatus::ok, 1));
    outcome.completed = true;
    log.log(LogLevel::info, rid, "persist", "record completed",
            {{"duration_s", record.ledger.total_duration_s}});
    return outcome;
}

} // namespace

RunReport run(const PipelineConfig& config) {
    Backends backends = config.adapters.mode == AdapterSettings::Mode::offline
                            ? make_offline_backends(config)
                            : make_live_backends(config);
    return run(config, backends);
}

RunReport run(const PipelineConfig& config, const Backends& backends) {
    validate(config);
    Logger::global().set_level(log_level_from_string(config.log_level));

    const auto started = std::chrono::steady_clock::now();
    const auto root = std::filesystem::path(config.output_root);

    if (std::filesystem::exists(dataset::manifest_path(root)) && !config.resume)
        throw ConfigError("output root already contains a manifest; use resume or a fresh directory");

    auto templates = config.template_dir.empty() ? prompts::TemplateSet::builtin()
                                                 : prompts::TemplateSet::load(config.template_dir);
    auto banned = config.banned_terms_path.empty() ? verify::BannedTerms::defaults()
                                                   : verify::BannedTerms::load(config.banned_terms_path);

    dataset::ManifestWriter writer(root, config_to_json(config));
    const auto done_ids = writer.ids();

    // published plan schema lives alongside the manifest
    {
        auto path = root / "scene_plan.schema.json";
        if (!std::filesystem::exists(path)) {
            std::ofstream out(path);
            out << canonical_json(plan::plan_json_schema()) << "\n";
        }
    }

    const std::string cfg_hash = config_hash(config);
    GateCounters gates;
    RecordContext ctx{config, backends, templates, banned, writer, cfg_hash, gates};

    RunReport report;
    report.requested = config.n_records;

    std::vector<RecordOutcome> outcomes;
    std::mutex outcomes_mu;
    std::atomic<int> next_index{0};

    auto worker = [&] {
        for (;;) {
            int index = next_index.fetch_add(1);
            if (index >= config.n_records) return;
            const std::uint64_t seed = combine_seed(config.global_seed, static_cast<std::uint64_t>(index));
            const std::string rid = make_record_id(index, seed);
            if (done_ids.count(rid)) {
                RecordOutcome skipped;
                skipped.index = index;
                skipped.record_id = rid;
                skipped.completed = true;
                skipped.skipped = true;
                std::lock_guard<std::mutex> lock(outcomes_mu);
                outcomes.push_back(std::move(skipped));
                continue;
            }
            RecordOutcome outcome;
            try {
                outcome = build_record(index, ctx);
            } catch (const std::exception& e) {
                // unexpected failure: abandon the record, keep the run alive
                outcome.index = index;
                outcome.record_id = rid;
                outcome.completed = false;
                outcome.stages.push_back(
                    make_outcome(Stage::persist, StageStatus::failed, 1, {e.what()}));
                Logger::global().log(LogLevel::error, rid, "pipeline", e.what());
            }
            std::lock_guard<std::mutex> lock(outcomes_mu);
            outcomes.push_back(std::move(outcome));
        }
    };

    const int n_workers = std::min(config.workers, config.n_records);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    std::sort(outcomes.begin(), outcomes.end(),
              [](const RecordOutcome& a, const RecordOutcome& b) { return a.index < b.index; });
    for (auto& o : outcomes) {
        if (o.skipped)
            ++report.skipped;
        else if (o.completed)
            ++report.completed;
        else
            ++report.abandoned;
    }
    report.records = std::move(outcomes);

    report.prescreen = {gates.prescreen_eval, gates.prescreen_ok};
    report.plan_logic = {gates.logic_eval, gates.logic_ok};
    report.judge = {gates.judge_eval, gates.judge_ok};
    report.alignment = {gates.align_eval, gates.align_ok};
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    // run report for the operator; not part of the dataset contract
    {
        std::ofstream out(root / "report.json");
        out << report.to_json().dump(2) << "\n";
    }
    return report;
}

} // namespace aadg::pipeline
