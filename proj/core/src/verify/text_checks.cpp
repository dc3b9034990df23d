#include <algorithm>
#include <cctype>
#include <fstream>

#include "aadg/errors.hpp"
#include "aadg/verify/verify.hpp"

namespace aadg::verify {

std::string_view to_string(ViolationCode code) {
    switch (code) {
    case ViolationCode::unknown_merge_type: return "unknown_merge_type";
    case ViolationCode::length_mismatch: return "length_mismatch";
    case ViolationCode::nonsense_text: return "nonsense_text";
    case ViolationCode::banned_term: return "banned_term";
    case ViolationCode::not_permutation: return "not_permutation";
    case ViolationCode::empty_field: return "empty_field";
    }
    return "?";
}

namespace {

struct Decoded {
    std::uint32_t cp;
    int len; // bytes consumed; 0 marks an invalid sequence
};

Decoded decode_utf8(std::string_view s, std::size_t i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) return {c, 1};
    int len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
        len = 2;
        cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
        len = 3;
        cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
        len = 4;
        cp = c & 0x07;
    } else {
        return {0, 0};
    }
    if (i + static_cast<std::size_t>(len) > s.size()) return {0, 0};
    for (int k = 1; k < len; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((cc & 0xC0) != 0x80) return {0, 0};
        cp = (cp << 6) | (cc & 0x3F);
    }
    return {cp, len};
}

// Letters, digits, common punctuation and whitespace. ASCII plus Latin
// letters plus typographic punctuation; control, unassigned and symbol-plane
// codepoints count as non-printable.
bool printable_codepoint(std::uint32_t cp) {
    if (cp == '\t' || cp == '\n' || cp == '\r') return true;
    if (cp >= 0x20 && cp <= 0x7E) return true;
    if (cp >= 0xA1 && cp <= 0x24F) return true;   // Latin-1 supplement + Latin extended
    if (cp >= 0x2010 && cp <= 0x2027) return true; // dashes, curly quotes, ellipsis
    if (cp == 0x20AC) return true;                 // euro sign
    return false;
}

} // namespace

std::vector<Violation> prescreen_text(std::string_view text, int min_chars, int max_chars,
                                      double min_printable_ratio) {
    std::vector<Violation> violations;
    if (text.empty()) {
        violations.push_back({ViolationCode::empty_field, "text is empty", "text"});
        return violations;
    }

    std::size_t total = 0, printable = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        Decoded d = decode_utf8(text, i);
        ++total;
        if (d.len == 0) {
            ++i; // invalid byte counts as one non-printable codepoint
            continue;
        }
        if (printable_codepoint(d.cp)) ++printable;
        i += static_cast<std::size_t>(d.len);
    }

    if (total < static_cast<std::size_t>(min_chars) || total > static_cast<std::size_t>(max_chars)) {
        violations.push_back({ViolationCode::nonsense_text,
                              "length " + std::to_string(total) + " outside [" +
                                  std::to_string(min_chars) + ", " + std::to_string(max_chars) + "]",
                              "text"});
    }
    double ratio = static_cast<double>(printable) / static_cast<double>(total);
    if (ratio < min_printable_ratio) {
        violations.push_back({ViolationCode::nonsense_text,
                              "printable ratio " + std::to_string(ratio) + " below " +
                                  std::to_string(min_printable_ratio),
                              "text"});
    }
    return violations;
}

BannedTerms::BannedTerms(std::vector<std::string> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_)
        std::transform(t.begin(), t.end(), t.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
}

BannedTerms BannedTerms::defaults() { return BannedTerms({"silence", "confusion", "nervousness"}); }

BannedTerms BannedTerms::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("banned terms: cannot open " + path.string());
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        terms.push_back(line.substr(start));
    }
    return BannedTerms(std::move(terms));
}

namespace {
bool word_char(unsigned char c) { return std::isalnum(c) != 0; }
} // namespace

std::string BannedTerms::first_match(std::string_view text) const {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& term : terms_) {
        if (term.empty()) continue;
        std::size_t pos = 0;
        while ((pos = lower.find(term, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !word_char(static_cast<unsigned char>(lower[pos - 1]));
            std::size_t after = pos + term.size();
            bool right_ok = after >= lower.size() || !word_char(static_cast<unsigned char>(lower[after]));
            if (left_ok && right_ok) return term;
            ++pos;
        }
    }
    return "";
}

std::vector<Violation> verify_plan_logic(const plan::ScenePlan& p, const BannedTerms& banned) {
    std::vector<Violation> violations;
    const std::size_t n = p.components.size();

    if (p.order.size() != n || p.merge_types.size() != n) {
        violations.push_back({ViolationCode::length_mismatch,
                              "components=" + std::to_string(n) + " order=" +
                                  std::to_string(p.order.size()) + " merge_types=" +
                                  std::to_string(p.merge_types.size()),
                              "plan"});
    }

    for (std::size_t i = 0; i < p.merge_types.size(); ++i) {
        if (!plan::is_known_merge_type(p.merge_types[i])) {
            violations.push_back({ViolationCode::unknown_merge_type,
                                  "'" + p.merge_types[i] + "' is not a designated merge method",
                                  "merge_types[" + std::to_string(i) + "]"});
        }
    }

    if (p.order.size() == n && n > 0 && !plan::is_permutation(p.order, n)) {
        violations.push_back({ViolationCode::not_permutation,
                              "order is not a permutation of 0.." + std::to_string(n - 1), "order"});
    }

    auto check_empty = [&violations](const std::string& value, const char* location) {
        if (value.empty())
            violations.push_back({ViolationCode::empty_field, "field is empty", location});
    };
    check_empty(p.summary, "summary");
    check_empty(p.anomaly, "anomaly");
    check_empty(p.anomaly_rationale, "anomaly_rationale");
    for (std::size_t i = 0; i < n; ++i) {
        if (p.components[i].description.empty()) {
            violations.push_back({ViolationCode::empty_field, "field is empty",
                                  "components[" + std::to_string(i) + "].description"});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::string term = banned.first_match(p.components[i].description);
        if (!term.empty()) {
            violations.push_back({ViolationCode::banned_term,
                                  "'" + term + "' is not an audible sound source",
                                  "components[" + std::to_string(i) + "].description"});
        }
    }
    return violations;
}

} // namespace aadg::verify
