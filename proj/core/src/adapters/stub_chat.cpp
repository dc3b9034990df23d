#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aadg/adapters/stub_world.hpp"
#include "aadg/adapters/stubs.hpp"
#include "aadg/rng.hpp"

namespace aadg::adapters {

namespace {

using stub::SceneEntry;
using stub::scene_table;

int parse_anomaly_count(std::string_view prompt) {
    // the bundled templates phrase it as "exactly N anomalous"
    const std::string_view key = "exactly ";
    std::size_t pos = prompt.find(key);
    while (pos != std::string_view::npos) {
        std::size_t digits = pos + key.size();
        std::size_t end = digits;
        while (end < prompt.size() && std::isdigit(static_cast<unsigned char>(prompt[end]))) ++end;
        if (end > digits && end - digits <= 3 &&
            prompt.find("anomalous", end) != std::string_view::npos)
            return std::stoi(std::string(prompt.substr(digits, end - digits)));
        pos = prompt.find(key, pos + 1);
    }
    return 1;
}

std::string compose_scenario(SplitMix64& rng, int anomaly_count) {
    const auto& table = scene_table();
    const auto& scene = table[rng.below(table.size())];

    static const char* intros[] = {"The scene is %s.", "This recording captures %s.",
                                   "You are listening to %s."};
    static const char* normal_forms[] = {"You can hear %s.", "In the background, %s continues.",
                                         "Nearby, %s can be heard.", "Throughout, there is %s."};
    static const char* anomaly_forms[] = {"Unexpectedly, %s cuts through the scene.",
                                          "Out of nowhere, %s breaks the usual pattern.",
                                          "At one point, %s interrupts everything."};

    auto fill = [](const char* form, const char* value) {
        std::string s(form);
        auto at = s.find("%s");
        s.replace(at, 2, value);
        return s;
    };

    std::string text = fill(intros[rng.below(3)], scene.setting);

    const std::size_t n_normal = std::min<std::size_t>(2 + rng.below(3), scene.normal.size());
    std::vector<std::size_t> pick(scene.normal.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (std::size_t i = pick.size(); i > 1; --i)
        std::swap(pick[i - 1], pick[rng.below(i)]);
    for (std::size_t i = 0; i < n_normal; ++i) {
        text += ' ';
        text += fill(normal_forms[rng.below(4)], scene.normal[pick[i]]);
    }

    std::vector<std::size_t> apick(scene.anomalies.size());
    for (std::size_t i = 0; i < apick.size(); ++i) apick[i] = i;
    for (std::size_t i = apick.size(); i > 1; --i)
        std::swap(apick[i - 1], apick[rng.below(i)]);
    const auto n_anom = std::min<std::size_t>(static_cast<std::size_t>(std::max(0, anomaly_count)),
                                              scene.anomalies.size());
    for (std::size_t i = 0; i < n_anom; ++i) {
        text += ' ';
        text += fill(anomaly_forms[rng.below(3)], scene.anomalies[apick[i]]);
    }

    text += " Every sound is distinct enough to place the scene by ear alone.";
    return text;
}

struct Found {
    const char* description;
    bool is_anomaly;
    std::size_t position;
};

std::string compose_plan(SplitMix64& rng, std::string_view prompt) {
    // recover the catalogue sounds quoted by the scenario prose
    const SceneEntry* best = nullptr;
    std::vector<Found> found;
    for (const auto& scene : scene_table()) {
        std::vector<Found> hits;
        for (const char* d : scene.normal) {
            auto p = prompt.find(d);
            if (p != std::string_view::npos) hits.push_back({d, false, p});
        }
        for (const char* d : scene.anomalies) {
            auto p = prompt.find(d);
            if (p != std::string_view::npos) hits.push_back({d, true, p});
        }
        if (hits.size() > found.size()) {
            found = std::move(hits);
            best = &scene;
        }
    }

    nlohmann::json plan;
    if (!best || found.empty()) {
        // free-form scenario: fall back to a minimal generic plan
        plan = {{"summary", "An unidentified ambient scene."},
                {"anomaly", "a sudden loud bang"},
                {"anomaly_rationale", "A sudden loud bang does not belong to a calm ambience."},
                {"components", {{{"description", "soft ambient room tone"},
                                 {"is_anomaly", false},
                                 {"duration_s", 5.0}},
                                {{"description", "a sudden loud bang"},
                                 {"is_anomaly", true},
                                 {"duration_s", 3.0}}}},
                {"order", {0, 1}},
                {"merge_types", {"fade_in", "overlay"}}};
    } else {
        std::sort(found.begin(), found.end(),
                  [](const Found& a, const Found& b) { return a.position < b.position; });

        nlohmann::json comps = nlohmann::json::array();
        std::string anomaly_text;
        for (const auto& f : found) {
            comps.push_back({{"description", f.description},
                             {"is_anomaly", f.is_anomaly},
                             {"duration_s", static_cast<double>(3 + rng.below(6))}});
            if (f.is_anomaly) {
                if (!anomaly_text.empty()) anomaly_text += "; ";
                anomaly_text += f.description;
            }
        }
        const std::size_t n = found.size();
        std::vector<int> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);

        std::vector<std::string> merges;
        static const char* all_merges[] = {"crossfade", "overlay", "fade_in", "fade_out"};
        merges.push_back(rng.below(2) == 0 ? "fade_in" : all_merges[rng.below(4)]);
        for (std::size_t i = 1; i < n; ++i) merges.push_back(all_merges[rng.below(4)]);

        bool has_anomaly = !anomaly_text.empty();
        plan = {{"summary", best->summary},
                {"anomaly", has_anomaly ? anomaly_text : "none"},
                {"anomaly_rationale",
                 has_anomaly ? "In " + std::string(best->setting) + ", " + anomaly_text +
                                   " is out of place."
                             : "No anomalous event is present in this scene."},
                {"components", comps},
                {"order", order},
                {"merge_types", merges}};
    }

    std::string body = plan.dump(2);
    // chat models often wrap JSON in markdown fences; mimic that half the
    // time so the tolerant intake path is exercised end to end
    if (rng.below(2) == 0) return "```json\n" + body + "\n```";
    return body;
}

std::string compose_judgement(SplitMix64& rng) {
    int score = 8 + static_cast<int>(rng.below(3));
    static const char* remarks[] = {
        "The component prompts are concrete and the anomaly fits the scene.",
        "Faithful to the scene; each prompt is short enough to synthesize well.",
        "Order and merges read naturally; the anomaly is clearly identified."};
    return std::to_string(score) + "\n" + remarks[rng.below(3)];
}

} // namespace

StubChatBackend::StubChatBackend(std::uint64_t base_seed, std::string backend_id)
    : base_seed_(base_seed), backend_id_(std::move(backend_id)) {}

ChatResponse StubChatBackend::complete(const ChatRequest& request) {
    validate(request);

    const std::uint64_t seed =
        combine_seed(combine_seed(base_seed_, static_cast<std::uint64_t>(request.seed.value_or(0))),
                     fnv1a(request.system_prompt, fnv1a(request.user_prompt)));
    SplitMix64 rng(seed);

    std::string text;
    if (request.system_prompt.find("structured sound plan") != std::string::npos) {
        text = compose_plan(rng, request.user_prompt);
    } else if (request.system_prompt.find("impartial judge") != std::string::npos) {
        text = compose_judgement(rng);
    } else {
        text = compose_scenario(rng, parse_anomaly_count(request.user_prompt));
    }
    return {std::move(text), backend_id_, 0, 0};
}

} // namespace aadg::adapters
