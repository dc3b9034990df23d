#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aadg/adapters/chat.hpp"
#include "aadg/adapters/embedding.hpp"
#include "aadg/plan/scene_plan.hpp"
#include "aadg/prompts.hpp"
#include "aadg/scenario/scenario.hpp"

namespace aadg::verify {

enum class ViolationCode {
    unknown_merge_type,
    length_mismatch,
    nonsense_text,
    banned_term,
    not_permutation,
    empty_field,
};

std::string_view to_string(ViolationCode code);

// Violations are data, not errors: verification reports them, the pipeline
// decides what to do.
struct Violation {
    ViolationCode code;
    std::string detail;
    std::string location; // field path, e.g. "merge_types[1]"
};

// Nonsense pre-screen: empty input -> empty_field; length outside
// [min_chars, max_chars] or printable-character ratio (letters, digits,
// common punctuation, whitespace, counted per Unicode codepoint) below
// min_printable_ratio -> nonsense_text.
std::vector<Violation> prescreen_text(std::string_view text, int min_chars, int max_chars,
                                      double min_printable_ratio = 0.95);

// Case-insensitive whole-word term list for component descriptions.
class BannedTerms {
public:
    // silence, confusion, nervousness
    static BannedTerms defaults();
    // one term per line, UTF-8; blank lines ignored
    static BannedTerms load(const std::filesystem::path& path);

    explicit BannedTerms(std::vector<std::string> terms = {});

    // first banned term contained in text as a whole word, empty if none
    std::string first_match(std::string_view text) const;
    const std::vector<std::string>& terms() const { return terms_; }

private:
    std::vector<std::string> terms_;
};

// The rule gate. Deterministic and order-stable; checks run in a fixed
// field order: list lengths, merge types by index, order permutation, empty
// fields (summary, anomaly, anomaly_rationale, component descriptions),
// banned terms by component. Empty result means pass.
std::vector<Violation> verify_plan_logic(const plan::ScenePlan& plan, const BannedTerms& banned);

struct JudgeConfig {
    int threshold = 7; // pass <=> score >= threshold
    int repair_budget = 1;
    double temperature = 0.0;
    int max_tokens = 256;
    std::optional<std::int64_t> seed;
};

struct JudgeVerdict {
    int score = 0; // 1..10
    std::string rationale;
    bool pass = false;
};

// Single-answer grading of the (scenario, plan) pair by an independent
// backend. Throws JudgeUnparseable when no integer 1..10 can be read from
// the reply even after the repair round-trip.
JudgeVerdict judge_plan(adapters::ChatBackend& judge, const scenario::Scenario& scenario,
                        const plan::ScenePlan& plan, const JudgeConfig& config,
                        const prompts::TemplateSet& templates);

// exposed for tests: first integer in [1, 10] appearing in the text
std::optional<int> parse_judge_score(std::string_view text);

// (a . b) / (|a| |b|), exact and symmetric; throws DimensionMismatch or
// ZeroNormVector.
double cosine_similarity(const adapters::EmbeddingVector& a, const adapters::EmbeddingVector& b);

// sigmoid(alpha * cosine - beta); alpha must be > 0
double regularized_similarity(double cosine, double alpha, double beta);

struct AlignmentParams {
    double alpha = 12.0;
    double beta = 1.0;
    double threshold = 0.75; // on the regularized score
};

struct AlignmentScore {
    double cosine = 0.0;
    double regularized = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool pass = false;
};

// Embeds the description and the clip, then applies the cosine and the
// sigmoid regularizer that spreads the compressed raw similarities apart.
AlignmentScore verify_audio_alignment(adapters::EmbeddingBackend& backend,
                                      const audio::AudioClip& clip, std::string_view description,
                                      const AlignmentParams& params);

} // namespace aadg::verify
