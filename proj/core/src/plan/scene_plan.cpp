#include "aadg/plan/scene_plan.hpp"

#include <algorithm>
#include <cmath>

#include "aadg/canonical_json.hpp"

namespace aadg::plan {

bool is_known_merge_type(std::string_view name) {
    const auto& names = merge_type_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_permutation(const std::vector<int>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : order) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

nlohmann::json to_json(const ScenePlan& plan) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : plan.components) {
        comps.push_back({{"index", c.index},
                         {"description", c.description},
                         {"is_anomaly", c.is_anomaly},
                         {"duration_s", c.duration_s}});
    }
    return {{"summary", plan.summary},
            {"anomaly", plan.anomaly},
            {"anomaly_rationale", plan.anomaly_rationale},
            {"components", comps},
            {"order", plan.order},
            {"merge_types", plan.merge_types}};
}

namespace {

bool get_string(const nlohmann::json& j, const char* key, std::string& out,
                std::vector<std::string>& errors) {
    auto it = j.find(key);
    if (it == j.end()) {
        errors.push_back(std::string("missing field '") + key + "'");
        return false;
    }
    if (!it->is_string()) {
        errors.push_back(std::string("field '") + key + "' must be a string");
        return false;
    }
    out = it->get<std::string>();
    return true;
}

} // namespace

std::optional<ScenePlan> plan_from_json(const nlohmann::json& j, std::vector<std::string>& errors) {
    if (!j.is_object()) {
        errors.push_back("plan must be a JSON object");
        return std::nullopt;
    }
    ScenePlan plan;
    bool ok = true;
    ok &= get_string(j, "summary", plan.summary, errors);
    ok &= get_string(j, "anomaly", plan.anomaly, errors);
    ok &= get_string(j, "anomaly_rationale", plan.anomaly_rationale, errors);

    auto comps = j.find("components");
    if (comps == j.end() || !comps->is_array()) {
        errors.push_back("field 'components' must be an array");
        ok = false;
    } else {
        int idx = 0;
        for (const auto& cj : *comps) {
            SoundComponent c;
            c.index = idx++;
            if (!cj.is_object()) {
                errors.push_back("components[" + std::to_string(c.index) + "] must be an object");
                ok = false;
                continue;
            }
            auto d = cj.find("description");
            if (d == cj.end() || !d->is_string()) {
                errors.push_back("components[" + std::to_string(c.index) + "].description must be a string");
                ok = false;
            } else {
                c.description = d->get<std::string>();
            }
            auto a = cj.find("is_anomaly");
            if (a != cj.end()) {
                if (!a->is_boolean()) {
                    errors.push_back("components[" + std::to_string(c.index) + "].is_anomaly must be a boolean");
                    ok = false;
                } else {
                    c.is_anomaly = a->get<bool>();
                }
            }
            auto dur = cj.find("duration_s");
            if (dur != cj.end()) {
                if (!dur->is_number()) {
                    errors.push_back("components[" + std::to_string(c.index) + "].duration_s must be a number");
                    ok = false;
                } else {
                    c.duration_s = dur->get<double>();
                }
            } // omitted -> default
            plan.components.push_back(std::move(c));
        }
    }

    auto order = j.find("order");
    if (order == j.end() || !order->is_array()) {
        errors.push_back("field 'order' must be an array of integers");
        ok = false;
    } else {
        for (const auto& v : *order) {
            if (!v.is_number_integer()) {
                errors.push_back("field 'order' must contain only integers");
                ok = false;
                break;
            }
            plan.order.push_back(v.get<int>());
        }
    }

    auto merges = j.find("merge_types");
    if (merges == j.end() || !merges->is_array()) {
        errors.push_back("field 'merge_types' must be an array of strings");
        ok = false;
    } else {
        for (const auto& v : *merges) {
            if (!v.is_string()) {
                errors.push_back("field 'merge_types' must contain only strings");
                ok = false;
                break;
            }
            plan.merge_types.push_back(v.get<std::string>());
        }
    }

    if (!ok) return std::nullopt;
    return plan;
}

std::string plan_to_canonical_json(const ScenePlan& plan) { return canonical_json(to_json(plan)); }

std::vector<std::string> check_plan(const ScenePlan& plan, int expected_anomalies,
                                    const PlanLimits& limits) {
    std::vector<std::string> problems;
    const std::size_t n = plan.components.size();

    if (n == 0) problems.push_back("components list is empty");
    if (plan.order.size() != n || plan.merge_types.size() != n) {
        problems.push_back("components (" + std::to_string(n) + "), order (" +
                           std::to_string(plan.order.size()) + ") and merge_types (" +
                           std::to_string(plan.merge_types.size()) + ") must have equal length");
    }
    if (plan.order.size() == n && !is_permutation(plan.order, n))
        problems.push_back("order is not a permutation of 0.." + std::to_string(n == 0 ? 0 : n - 1));

    for (std::size_t i = 0; i < plan.merge_types.size(); ++i) {
        if (!is_known_merge_type(plan.merge_types[i]))
            problems.push_back("merge_types[" + std::to_string(i) + "] '" + plan.merge_types[i] +
                               "' is not one of crossfade, overlay, fade_in, fade_out");
    }

    int anomalies = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = plan.components[i];
        if (c.description.empty())
            problems.push_back("components[" + std::to_string(i) + "].description is empty");
        else if (c.description.size() > limits.max_description_chars)
            problems.push_back("components[" + std::to_string(i) + "].description exceeds " +
                               std::to_string(limits.max_description_chars) + " characters");
        if (c.is_anomaly) ++anomalies;
    }
    if (anomalies != expected_anomalies)
        problems.push_back("exactly " + std::to_string(expected_anomalies) +
                           " component(s) must have is_anomaly true, found " + std::to_string(anomalies));

    if (plan.summary.empty()) problems.push_back("summary is empty");
    if (plan.anomaly.empty()) problems.push_back("anomaly is empty");
    if (plan.anomaly_rationale.empty()) problems.push_back("anomaly_rationale is empty");
    return problems;
}

void clamp_durations(ScenePlan& plan, const PlanLimits& limits) {
    for (auto& c : plan.components) {
        if (!std::isfinite(c.duration_s)) c.duration_s = limits.default_duration_s;
        c.duration_s = std::clamp(c.duration_s, limits.min_duration_s, limits.max_duration_s);
    }
}

nlohmann::json plan_json_schema() {
    return {
        {"$schema", "http://json-schema.org/draft-07/schema#"},
        {"$id", std::string(kPlanSchemaVersion)},
        {"title", "ScenePlan"},
        {"type", "object"},
        {"required", {"summary", "anomaly", "anomaly_rationale", "components", "order", "merge_types"}},
        {"properties",
         {{"summary", {{"type", "string"}, {"minLength", 1}}},
          {"anomaly", {{"type", "string"}, {"minLength", 1}}},
          {"anomaly_rationale", {{"type", "string"}, {"minLength", 1}}},
          {"components",
           {{"type", "array"},
            {"minItems", 1},
            {"items",
             {{"type", "object"},
              {"required", {"description"}},
              {"properties",
               {{"description", {{"type", "string"}, {"minLength", 1}, {"maxLength", 120}}},
                {"is_anomaly", {{"type", "boolean"}}},
                {"duration_s", {{"type", "number"}, {"minimum", 1.0}, {"maximum", 30.0}}}}}}}}},
          {"order",
           {{"type", "array"},
            {"items", {{"type", "integer"}, {"minimum", 0}}},
            {"description", "permutation of 0..len(components)-1; same length as components"}}},
          {"merge_types",
           {{"type", "array"},
            {"items", {{"type", "string"}, {"enum", {"crossfade", "overlay", "fade_in", "fade_out"}}}},
            {"description", "entry treatment of the i-th ordered component; same length as components"}}}}}};
}

} // namespace aadg::plan
