#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace aadg::prompts {

// One prompt template: plain UTF-8 text, "---" on its own line separating
// the system part from the user part, {name} placeholders.
struct Template {
    std::string id;
    std::string system;
    std::string user;
};

std::string render(std::string_view text, const std::map<std::string, std::string>& values);

Template parse_template(std::string id, std::string_view file_text);

// Versioned template family. The compiled-in defaults match the files under
// assets/templates/; a directory overrides them per id.
class TemplateSet {
public:
    static TemplateSet builtin();
    // loads <id>.txt for each requested id; ids missing from the directory
    // fall back to the builtin of the same id
    static TemplateSet load(const std::filesystem::path& dir);

    const Template& scenario() const { return scenario_; }
    const Template& extraction() const { return extraction_; }
    const Template& judge() const { return judge_; }

private:
    Template scenario_, extraction_, judge_;
};

} // namespace aadg::prompts
