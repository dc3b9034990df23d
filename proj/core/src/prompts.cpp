#include "aadg/prompts.hpp"

#include <fstream>
#include <sstream>

#include "aadg/errors.hpp"

namespace aadg::prompts {

namespace {

// Kept byte-identical with assets/templates/*.txt. The offline chat stub
// keys on the phrases "structured sound plan" and "impartial judge".
constexpr const char* kScenarioV1 =
    "You write grounded, sensory descriptions of real-world acoustic scenes. Only consider scenes "
    "whose sounds alone are distinctive enough to identify the setting. Respond with prose only, "
    "no lists or headings.\n"
    "---\n"
    "Describe one plausible real-world acoustic scene{scene_hint}. Mention every distinct sound "
    "source explicitly, and include exactly {anomaly_count} anomalous sound event(s) - sounds that "
    "do not belong in this scene. Keep the description under {max_chars} characters.\n";

constexpr const char* kExtractionV1 =
    "You convert a scene description into a structured sound plan. Reply with a single JSON object "
    "and nothing else.\n"
    "---\n"
    "Scene description:\n{scenario}\n\n"
    "Produce a JSON object with these fields:\n{schema}\n"
    "Rules: each component description is a short sound prompt of at most {max_desc} characters; "
    "order is a permutation of the component indices 0..N-1; every merge_types value is one of "
    "crossfade, overlay, fade_in, fade_out; exactly {anomaly_count} component(s) must have "
    "is_anomaly true; components, order and merge_types must have the same length.\n";

constexpr const char* kJudgeV1 =
    "You are an impartial judge of sound plans. Grade strictly and do not explain the grading "
    "scale.\n"
    "---\n"
    "Scene description:\n{scenario}\n\n"
    "Proposed sound plan (JSON):\n{plan_json}\n\n"
    "Score from 1 to 10 how faithfully the plan captures the scene and how suitable each component "
    "description is as a short text-to-audio prompt. Reply with the integer score on the first "
    "line, then one sentence of justification.\n";

} // namespace

std::string render(std::string_view text, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '{') {
            auto close = text.find('}', i);
            if (close != std::string_view::npos) {
                std::string key(text.substr(i + 1, close - i - 1));
                auto it = values.find(key);
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += text[i++];
    }
    return out;
}

Template parse_template(std::string id, std::string_view file_text) {
    auto sep = file_text.find("\n---\n");
    if (sep == std::string_view::npos)
        throw ConfigError("template '" + id + "': missing '---' separator between system and user parts");
    Template t;
    t.id = std::move(id);
    t.system = std::string(file_text.substr(0, sep));
    t.user = std::string(file_text.substr(sep + 5));
    while (!t.user.empty() && t.user.back() == '\n') t.user.pop_back();
    return t;
}

TemplateSet TemplateSet::builtin() {
    TemplateSet set;
    set.scenario_ = parse_template("scenario_v1", kScenarioV1);
    set.extraction_ = parse_template("extraction_v1", kExtractionV1);
    set.judge_ = parse_template("judge_v1", kJudgeV1);
    return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
    TemplateSet set = builtin();
    auto load_one = [&dir](Template& slot) {
        auto path = dir / (slot.id + ".txt");
        if (!std::filesystem::exists(path)) return;
        std::ifstream in(path);
        if (!in) throw IoFailure("template: cannot open " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        slot = parse_template(slot.id, buf.str());
    };
    load_one(set.scenario_);
    load_one(set.extraction_);
    load_one(set.judge_);
    return set;
}

} // namespace aadg::prompts
