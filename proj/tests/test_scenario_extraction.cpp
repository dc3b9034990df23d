#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "aadg/adapters/stub_world.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/errors.hpp"
#include "aadg/plan/extraction.hpp"
#include "aadg/prompts.hpp"
#include "aadg/rng.hpp"
#include "aadg/scenario/scenario.hpp"
#include "aadg/verify/verify.hpp"
#include "support/scripted_backends.hpp"

using namespace aadg;

TEST_SUITE_BEGIN("scenario_extraction");

TEST_CASE("template rendering replaces named placeholders") {
    CHECK(prompts::render("exactly {n} events in {place}", {{"n", "2"}, {"place", "a barn"}}) ==
          "exactly 2 events in a barn");
    // unknown placeholders stay literal
    CHECK(prompts::render("keep {unknown}", {}) == "keep {unknown}");
}

TEST_CASE("template set: files override builtins, missing ids fall back") {
    auto templates = prompts::TemplateSet::builtin();
    CHECK(templates.scenario().id == "scenario_v1");
    CHECK(templates.extraction().system.find("structured sound plan") != std::string::npos);
    CHECK(templates.judge().system.find("impartial judge") != std::string::npos);
    CHECK(templates.scenario().user.find("{anomaly_count}") != std::string::npos);

    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "aadg_tpl_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "scenario_v1.txt");
        out << "custom system\n---\ncustom user with {anomaly_count}\n";
    }
    auto loaded = prompts::TemplateSet::load(dir);
    CHECK(loaded.scenario().system == "custom system");
    CHECK(loaded.scenario().user == "custom user with {anomaly_count}");
    // ids absent from the directory keep their builtin text
    CHECK(loaded.extraction().user == templates.extraction().user);
    fs::remove_all(dir);
}

TEST_CASE("shipped template assets match the compiled-in defaults") {
    auto builtin = prompts::TemplateSet::builtin();
    auto shipped = prompts::TemplateSet::load(AADG_SOURCE_DIR "/assets/templates");
    CHECK(shipped.scenario().system == builtin.scenario().system);
    CHECK(shipped.scenario().user == builtin.scenario().user);
    CHECK(shipped.extraction().system == builtin.extraction().system);
    CHECK(shipped.extraction().user == builtin.extraction().user);
    CHECK(shipped.judge().system == builtin.judge().system);
    CHECK(shipped.judge().user == builtin.judge().user);
}

TEST_CASE("banned-term list file: one term per line") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "aadg_banned_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "terms.txt");
        out << "Hum\n\n  buzz  \n";
    }
    auto banned = verify::BannedTerms::load(dir / "terms.txt");
    REQUIRE(banned.terms().size() == 2);
    CHECK(banned.first_match("a low HUM under the floor") == "hum");
    CHECK(banned.first_match("wires buzz faintly") == "buzz");
    CHECK(banned.first_match("a humming refrigerator").empty()); // whole word only
    fs::remove_all(dir);

    auto shipped = verify::BannedTerms::load(AADG_SOURCE_DIR "/assets/banned_terms.txt");
    CHECK(shipped.terms() == verify::BannedTerms::defaults().terms());
    CHECK_THROWS_AS(verify::BannedTerms::load("/nonexistent/terms.txt"), IoFailure);
}

TEST_CASE("generate_scenario: seeded runs are identical, accepted text passes the pre-screen") {
    adapters::StubChatBackend chat(0);
    auto templates = prompts::TemplateSet::builtin();
    scenario::ScenarioConfig config;

    auto a = scenario::generate_scenario(chat, config, templates, 42);
    auto b = scenario::generate_scenario(chat, config, templates, 42);
    CHECK(a.text == b.text);
    CHECK(a.generation_seed == b.generation_seed);
    CHECK(verify::prescreen_text(a.text, config.min_scenario_chars, config.max_scenario_chars)
              .empty());
    CHECK(a.text.size() <= static_cast<std::size_t>(config.max_scenario_chars));

    auto c = scenario::generate_scenario(chat, config, templates, 43);
    CHECK(a.text != c.text);
}

TEST_CASE("generate_scenario: anomaly_count 0 produces no catalogue anomaly") {
    adapters::StubChatBackend chat(0);
    auto templates = prompts::TemplateSet::builtin();
    scenario::ScenarioConfig config;
    config.anomaly_count = 0;

    for (std::int64_t seed = 0; seed < 10; ++seed) {
        auto s = scenario::generate_scenario(chat, config, templates, seed);
        for (const auto& scene : adapters::stub::scene_table())
            for (const char* anomaly : scene.anomalies)
                CHECK(s.text.find(anomaly) == std::string::npos);
    }
}

TEST_CASE("generate_scenario: nonsense replies exhaust the attempt budget") {
    std::string garbage;
    for (int i = 0; i < 60; ++i) garbage += 'a';
    for (int i = 0; i < 40; ++i) garbage += '\x02'; // 40% non-printable
    testsupport::ScriptedChatBackend chat({garbage});

    auto templates = prompts::TemplateSet::builtin();
    scenario::ScenarioConfig config; // budget 3
    std::vector<std::string> rejections;
    CHECK_THROWS_AS(scenario::generate_scenario(chat, config, templates, 1, &rejections),
                    GenerationExhausted);
    CHECK(chat.calls == 3);
    REQUIRE(rejections.size() == 3);
    for (const auto& r : rejections) CHECK(r.find("nonsense_text") != std::string::npos);
}

TEST_CASE("tolerant json intake: fences and trailing commas") {
    auto direct = plan::tolerant_json_parse(R"({"a": [1, 2], "b": "x"})");
    REQUIRE(direct.has_value());

    auto fenced = plan::tolerant_json_parse("```json\n{\"a\": [1, 2], \"b\": \"x\"}\n```");
    REQUIRE(fenced.has_value());
    CHECK(*fenced == *direct);

    auto bare_fence = plan::tolerant_json_parse("```\n{\"a\": [1, 2], \"b\": \"x\"}\n```");
    REQUIRE(bare_fence.has_value());
    CHECK(*bare_fence == *direct);

    auto trailing = plan::tolerant_json_parse(R"({"a": [1, 2,], "b": "x",})");
    REQUIRE(trailing.has_value());
    CHECK(*trailing == *direct);

    // commas inside strings survive
    auto tricky = plan::tolerant_json_parse(R"({"a": "1, 2,", "b": "x"})");
    REQUIRE(tricky.has_value());
    CHECK((*tricky)["a"] == "1, 2,");

    CHECK(!plan::tolerant_json_parse("not json at all").has_value());
}

namespace {

scenario::Scenario scenario_with(const char* text) {
    scenario::Scenario s;
    s.text = text;
    return s;
}

std::string valid_plan_reply() {
    return R"({
      "summary": "A rainy street at dusk.",
      "anomaly": "glass shattering against concrete",
      "anomaly_rationale": "Breaking glass does not belong on a calm street.",
      "components": [
        {"description": "steady rain falling on pavement", "is_anomaly": false, "duration_s": 6.0},
        {"description": "a car passing slowly on a wet road", "is_anomaly": false, "duration_s": 4.0},
        {"description": "glass shattering against concrete", "is_anomaly": true, "duration_s": 3.0}
      ],
      "order": [0, 2, 1],
      "merge_types": ["fade_in", "overlay", "crossfade"]
    })";
}

} // namespace

TEST_CASE("extract_plan: valid three-component reply maps to 3/3/3 lists") {
    testsupport::ScriptedChatBackend chat({valid_plan_reply()});
    auto templates = prompts::TemplateSet::builtin();
    plan::ExtractionConfig config;

    auto p = plan::extract_plan(chat, scenario_with("rain street scene"), config, templates);
    CHECK(p.components.size() == 3);
    CHECK(p.order.size() == 3);
    CHECK(p.merge_types.size() == 3);
    CHECK(p.components[2].is_anomaly);
    CHECK(p.components[0].duration_s == 6.0);
}

TEST_CASE("extract_plan: markdown-fenced reply parses like the bare one") {
    testsupport::ScriptedChatBackend bare({valid_plan_reply()});
    testsupport::ScriptedChatBackend fenced({"```json\n" + valid_plan_reply() + "\n```"});
    auto templates = prompts::TemplateSet::builtin();
    plan::ExtractionConfig config;

    auto a = plan::extract_plan(bare, scenario_with("x"), config, templates);
    auto b = plan::extract_plan(fenced, scenario_with("x"), config, templates);
    CHECK(plan::plan_to_canonical_json(a) == plan::plan_to_canonical_json(b));
}

TEST_CASE("extract_plan: bad order is repaired or fails with the permutation message") {
    auto broken = nlohmann::json::parse(valid_plan_reply());
    broken["order"] = {0, 0, 2};
    // scripted backend keeps answering the same broken plan: repairs run out
    testsupport::ScriptedChatBackend stubborn({broken.dump()});
    auto templates = prompts::TemplateSet::builtin();
    plan::ExtractionConfig config; // repair budget 2

    try {
        plan::extract_plan(stubborn, scenario_with("x"), config, templates);
        FAIL("expected ExtractionSchemaError");
    } catch (const ExtractionSchemaError& e) {
        CHECK(std::string(e.what()).find("permutation") != std::string::npos);
    }
    CHECK(stubborn.calls == 3); // initial + 2 repairs

    // a repair round-trip that actually fixes the plan succeeds
    testsupport::ScriptedChatBackend repairable({broken.dump(), valid_plan_reply()});
    int attempts = 0;
    auto p = plan::extract_plan(repairable, scenario_with("x"), config, templates, &attempts);
    CHECK(attempts == 2);
    CHECK(p.order == std::vector<int>{0, 2, 1});
}

TEST_CASE("extract_plan: anomaly count must match the scenario contract") {
    auto two_anomalies = nlohmann::json::parse(valid_plan_reply());
    two_anomalies["components"][1]["is_anomaly"] = true;
    testsupport::ScriptedChatBackend chat({two_anomalies.dump()});
    auto templates = prompts::TemplateSet::builtin();
    plan::ExtractionConfig config;
    config.expected_anomalies = 1;
    CHECK_THROWS_AS(plan::extract_plan(chat, scenario_with("x"), config, templates),
                    ExtractionSchemaError);
}

TEST_CASE("extract_plan: duration defaults and clamping") {
    auto reply = nlohmann::json::parse(valid_plan_reply());
    reply["components"][0].erase("duration_s");       // -> default 5.0
    reply["components"][1]["duration_s"] = 0.25;      // -> clamped to 1.0
    reply["components"][2]["duration_s"] = 120.0;     // -> clamped to 30.0
    testsupport::ScriptedChatBackend chat({reply.dump()});
    auto templates = prompts::TemplateSet::builtin();

    auto p = plan::extract_plan(chat, scenario_with("x"), {}, templates);
    CHECK(p.components[0].duration_s == 5.0);
    CHECK(p.components[1].duration_s == 1.0);
    CHECK(p.components[2].duration_s == 30.0);
}

TEST_CASE("extract_plan: oversized description fails schema enforcement") {
    auto reply = nlohmann::json::parse(valid_plan_reply());
    reply["components"][0]["description"] = std::string(200, 'x');
    testsupport::ScriptedChatBackend chat({reply.dump()});
    auto templates = prompts::TemplateSet::builtin();
    CHECK_THROWS_AS(plan::extract_plan(chat, scenario_with("x"), {}, templates),
                    ExtractionSchemaError);
}

TEST_CASE("canonical plan json: sorted keys, fixed reals, lossless round-trip") {
    auto reply = plan::tolerant_json_parse(valid_plan_reply());
    std::vector<std::string> errors;
    auto p = plan::plan_from_json(*reply, errors);
    REQUIRE(p.has_value());

    auto text = plan::plan_to_canonical_json(*p);
    CHECK(text.find("\"duration_s\":6.000000") != std::string::npos);
    CHECK(text.find("\"duration_s\":3.000000") != std::string::npos);

    // parse back and re-serialize: identical bytes
    auto reparsed = plan::plan_from_json(nlohmann::json::parse(text), errors);
    REQUIRE(reparsed.has_value());
    CHECK(plan::plan_to_canonical_json(*reparsed) == text);

    // two field orders, one canonical form
    nlohmann::json shuffled = nlohmann::json::parse(text);
    nlohmann::json reordered;
    reordered["merge_types"] = shuffled["merge_types"];
    reordered["order"] = shuffled["order"];
    reordered["summary"] = shuffled["summary"];
    reordered["anomaly"] = shuffled["anomaly"];
    reordered["anomaly_rationale"] = shuffled["anomaly_rationale"];
    reordered["components"] = shuffled["components"];
    auto q = plan::plan_from_json(reordered, errors);
    REQUIRE(q.has_value());
    CHECK(plan::plan_to_canonical_json(*q) == text);
}

TEST_CASE("canonical plan json separates distinct plans") {
    SplitMix64 rng(99);
    auto base = testsupport::random_valid_plan(rng, 3, 3);
    auto mutants = std::vector<plan::ScenePlan>{base, base, base, base, base};
    mutants[1].components[0].duration_s += 1.0;
    mutants[2].order = {base.order[2], base.order[1], base.order[0]};
    if (mutants[2].order == base.order) mutants[2].order = {base.order[1], base.order[0], base.order[2]};
    mutants[3].merge_types[0] = base.merge_types[0] == "overlay" ? "fade_out" : "overlay";
    mutants[4].summary += " extended";

    std::set<std::string> forms;
    for (const auto& m : mutants) forms.insert(plan::plan_to_canonical_json(m));
    CHECK(forms.size() == mutants.size());
}

TEST_CASE("offline stub chain: scenario -> extraction -> logic gate") {
    adapters::StubChatBackend chat(0);
    auto templates = prompts::TemplateSet::builtin();
    auto banned = verify::BannedTerms::defaults();

    for (std::int64_t seed = 0; seed < 8; ++seed) {
        scenario::ScenarioConfig sc;
        auto scen = scenario::generate_scenario(chat, sc, templates, seed);
        plan::ExtractionConfig ec;
        ec.seed = seed;
        auto p = plan::extract_plan(chat, scen, ec, templates);
        CHECK(verify::verify_plan_logic(p, banned).empty());
        CHECK(plan::check_plan(p, 1, {}).empty());
    }
}

TEST_SUITE_END();
