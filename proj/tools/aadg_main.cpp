// aadg: generate, validate and inspect synthetic anomalous-audio datasets.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aadg/adapters/stubs.hpp"
#include "aadg/audio/ops.hpp"
#include "aadg/dataset/manifest.hpp"
#include "aadg/errors.hpp"
#include "aadg/pipeline/config.hpp"
#include "aadg/pipeline/runner.hpp"
#include "aadg/pipeline/validate.hpp"
#include "aadg/plan/extraction.hpp"
#include "aadg/verify/verify.hpp"

namespace {

using namespace aadg;

int cmd_generate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::optional<std::string>& out, const std::optional<int>& n,
                 const std::optional<std::uint64_t>& seed, const std::optional<int>& workers,
                 bool offline, bool live, bool resume, const std::optional<std::string>& log_level) {
    nlohmann::json file_json = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        file_json = nlohmann::json::parse(in);
    }
    for (const auto& assignment : overrides) pipeline::apply_override(file_json, assignment);

    auto config = pipeline::config_from_json(file_json);
    // flags beat the file
    if (out) config.output_root = *out;
    if (n) config.n_records = *n;
    if (seed) config.global_seed = *seed;
    if (workers) config.workers = *workers;
    if (offline) config.adapters.mode = pipeline::AdapterSettings::Mode::offline;
    if (live) config.adapters.mode = pipeline::AdapterSettings::Mode::live;
    if (resume) config.resume = true;
    if (log_level) config.log_level = *log_level;

    auto report = pipeline::run(config);

    std::printf("records: %d completed, %d skipped (resume), %d abandoned of %d requested\n",
                report.completed, report.skipped, report.abandoned, report.requested);
    std::printf("gates:   prescreen %.0f%%  plan-logic %.0f%%  judge %.0f%%  alignment %.0f%%\n",
                100 * report.prescreen.rate(), 100 * report.plan_logic.rate(),
                100 * report.judge.rate(), 100 * report.alignment.rate());
    std::printf("wall:    %.2f s; report written to %s/report.json\n", report.wall_time_s,
                config.output_root.c_str());
    return report.all_completed() ? 0 : 1;
}

int cmd_validate(const std::string& root) {
    auto report = pipeline::validate_dataset(root);
    for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    for (const auto& i : report.issues)
        std::printf("FAIL %s [%s] %s\n", i.record_id.c_str(), i.check.c_str(), i.detail.c_str());
    std::printf("%d record(s) checked, %d failed, %d partial manifest line(s)\n",
                report.records_checked, report.records_failed, report.partial_lines);
    std::printf("%s\n", report.ok() ? "dataset OK" : "dataset INVALID");
    return report.ok() ? 0 : 1;
}

int cmd_inspect(const std::string& root, const std::string& record_id) {
    auto manifest = dataset::load_manifest(root);
    for (const auto& r : manifest.records) {
        if (r.record_id != record_id) continue;
        std::printf("record    %s\n", r.record_id.c_str());
        std::printf("scenario  %s\n", r.scenario.c_str());
        std::printf("summary   %s\n", r.summary.c_str());
        std::printf("anomaly   %s\n", r.anomaly.c_str());
        std::printf("rationale %s\n", r.anomaly_rationale.c_str());
        std::printf("judge     %d\n", r.verification.judge_score);
        std::printf("final     %s (%.3f s at %d Hz)\n", r.final_wav_path.c_str(),
                    r.ledger.total_duration_s, r.sample_rate);
        std::printf("components:\n");
        for (std::size_t i = 0; i < r.components.size(); ++i) {
            const auto& c = r.components[i];
            std::printf("  [%zu]%s %s (%s)\n", i, c.is_anomaly ? " ANOMALY" : "",
                        c.description.c_str(), c.wav_path.c_str());
        }
        std::printf("order: ");
        for (int o : r.order) std::printf("%d ", o);
        std::printf("\nmerges: ");
        for (const auto& m : r.merge_types) std::printf("%s ", m.c_str());
        std::printf("\nledger:\n");
        for (const auto& e : r.ledger.entries)
            std::printf("  component %d: %9.6f .. %9.6f s\n", e.component_index, e.start_s, e.end_s);
        return 0;
    }
    std::fprintf(stderr, "record '%s' not found under %s\n", record_id.c_str(), root.c_str());
    return 1;
}

int cmd_stubs() {
    int failed = 0;
    auto check = [&failed](const char* name, bool ok) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failed;
    };

    adapters::StubChatBackend chat(0);
    adapters::ChatRequest req;
    req.system_prompt = "scene";
    req.user_prompt = "Describe a scene with exactly 1 anomalous sound event.";
    req.seed = 7;
    check("chat stub determinism", chat.complete(req).text == chat.complete(req).text);

    adapters::StubTextToAudio tta(16000);
    auto clip = tta.synthesize({"dog barking", 5.0, 7});
    check("tta stub length (5 s at 16 kHz = 80000)", clip.samples.size() == 80000);
    auto clip2 = tta.synthesize({"dog barking", 5.0, 7});
    check("tta stub determinism", clip.samples == clip2.samples);

    adapters::StubEmbedding embed(1024);
    auto t = embed.embed_text("rain falling");
    auto a = embed.embed_audio(tta.synthesize({"rain falling", 5.0, 1}));
    auto cos_match = verify::cosine_similarity(t, a);
    check("embedding stub: matching pair cosine > 0.9", cos_match > 0.9);
    auto u = embed.embed_audio(tta.synthesize({"a dog barking between the desks", 5.0, 1}));
    auto cos_unrelated = verify::cosine_similarity(t, u);
    check("embedding stub: unrelated pair cosine < 0.3", cos_unrelated < 0.3);

    check("tolerant JSON intake strips fences",
          plan::tolerant_json_parse("```json\n{\"a\": 1,}\n```").has_value());

    // one-record end-to-end in a scratch directory
    auto tmp = std::filesystem::temp_directory_path() /
               ("aadg-stubs-" + std::to_string(::getpid()));
    std::filesystem::remove_all(tmp);
    pipeline::PipelineConfig config;
    config.n_records = 1;
    config.global_seed = 42;
    config.output_root = (tmp / "dataset").string();
    config.log_level = "error";
    bool e2e_ok = false;
    try {
        auto report = pipeline::run(config);
        e2e_ok = report.completed == 1 && pipeline::validate_dataset(config.output_root).ok();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "stubs e2e: %s\n", e.what());
    }
    check("offline one-record pipeline + validate", e2e_ok);
    std::filesystem::remove_all(tmp);

    std::printf("%s\n", failed == 0 ? "stub suite OK" : "stub suite FAILED");
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synthetic anomalous-audio dataset generator"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "run the generation pipeline");
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> out, log_level;
    std::optional<int> n, workers;
    std::optional<std::uint64_t> seed;
    bool offline = false, live = false, resume = false;
    generate->add_option("--config", config_path, "JSON config file");
    generate->add_option("--set", overrides, "override a config key, e.g. --set verify.alpha=10");
    generate->add_option("--out", out, "output dataset root");
    generate->add_option("--n", n, "number of records to generate");
    generate->add_option("--seed", seed, "global seed");
    generate->add_option("--workers", workers, "parallel record workers");
    generate->add_flag("--offline", offline, "use the deterministic offline stubs");
    generate->add_flag("--live", live, "use live backends (AADG_* endpoints)");
    generate->add_flag("--resume", resume, "skip records already in the manifest");
    generate->add_option("--log-level", log_level, "debug|info|warn|error");

    // validate
    auto* validate = app.add_subcommand("validate", "re-check every record invariant");
    std::string validate_root = "dataset";
    validate->add_option("root", validate_root, "dataset root directory");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "print one record's metadata and ledger");
    std::string inspect_root = "dataset", record_id;
    inspect->add_option("record_id", record_id, "record id")->required();
    inspect->add_option("--root", inspect_root, "dataset root directory");

    // stubs
    app.add_subcommand("stubs", "run the offline smoke suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed())
            return cmd_generate(config_path, overrides, out, n, seed, workers, offline, live, resume,
                                log_level);
        if (validate->parsed()) return cmd_validate(validate_root);
        if (inspect->parsed()) return cmd_inspect(inspect_root, record_id);
        return cmd_stubs();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const FatalBackendError& e) {
        std::fprintf(stderr, "fatal backend error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
