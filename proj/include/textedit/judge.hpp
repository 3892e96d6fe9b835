#pragma once

#include "textedit/corpus.hpp"
#include "textedit/http.hpp"

#include <array>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace textedit {

inline constexpr std::size_t kJudgeDimensions = 5;

/// Rendered judge instruction plus the images it refers to, in the order
/// original, ground truth, edited.
struct JudgePrompt {
    std::string system_text;
    std::array<std::string, 3> image_slots;
};

/// The instruction template with {raw_text} and {target_text} placeholders.
std::string_view judge_prompt_template();

class JudgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws JudgeError when the sample has no ground-truth image.
JudgePrompt build_judge_prompt(const Sample& sample);

/// Likert scores and reasons for Q1..Q5 (index 0 is Q1).
struct JudgeRaw {
    std::array<int, kJudgeDimensions> scores{};
    std::array<std::string, kJudgeDimensions> reasons;

    bool operator==(const JudgeRaw&) const = default;
};

class JudgeParseError : public JudgeError {
public:
    using JudgeError::JudgeError;
};

/// Extracts the first balanced JSON object (tolerating a code fence or prose
/// around it) and validates {"score": {Q1..Q5: 1..5}, "reason": {Q1..Q5: str}}.
JudgeRaw parse_judge_response(std::string_view text);
std::string serialize_judge_raw(const JudgeRaw& raw);

/// (s - 1) / 4 for s in 1..5.
double normalize_likert(int score);

struct JudgeWeights {
    std::array<double, kJudgeDimensions> w{0.4, 0.3, 0.1, 0.1, 0.1};

    /// Non-negative and summing to 1 within 1e-9.
    void validate() const;
    /// Comma-separated list of five reals.
    static JudgeWeights parse(std::string_view csv);
};

/// w1 s'1 + [s1 >= 4] * sum_{i>=2} wi s'i.
double weighted_vscore(const JudgeRaw& raw, const JudgeWeights& weights = {});

struct JudgeScores {
    JudgeRaw raw;
    std::array<double, kJudgeDimensions> normalized{};
    double v_score = 0.0;

    bool operator==(const JudgeScores&) const = default;
};

JudgeScores score_judge_raw(const JudgeRaw& raw, const JudgeWeights& weights = {});

/// Something that answers a judge prompt with the model's text output.
class JudgeClient {
public:
    virtual ~JudgeClient() = default;
    virtual std::string complete(const JudgePrompt& prompt) = 0;
    virtual const std::string& model_id() const = 0;
};

struct HttpJudgeConfig {
    std::string endpoint;
    std::string model_id;
    std::string token_env;
    HttpRetryPolicy retry;
};

/// POSTs {"model", "prompt", "images": [original, ground_truth, edited]} and
/// reads {"text": "..."} from the reply (a bare text body is accepted too).
class HttpJudgeClient : public JudgeClient {
public:
    explicit HttpJudgeClient(HttpJudgeConfig cfg);

    std::string complete(const JudgePrompt& prompt) override;
    const std::string& model_id() const override { return cfg_.model_id; }

private:
    HttpJudgeConfig cfg_;
    Endpoint endpoint_;
};

/// One file per (sample id, model id) holding the raw response together with
/// the prompt hash it answers. Writes go through a temporary file and rename.
class ResponseCache {
public:
    explicit ResponseCache(std::filesystem::path dir, bool create = true);

    std::optional<std::string> get(const std::string& sample_id, const std::string& model_id,
                                   const std::string& prompt_hash) const;
    void put(const std::string& sample_id, const std::string& model_id, const std::string& prompt_hash,
             const std::string& response) const;

    std::filesystem::path entry_path(const std::string& sample_id, const std::string& model_id) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

std::string prompt_hash(const JudgePrompt& prompt);

struct JudgeContext {
    JudgeClient* client = nullptr;   // null means replay only
    const ResponseCache* cache = nullptr;
    std::string model_id;            // used for cache lookups when client is null
    JudgeWeights weights;
};

/// Cache first, then the client. Throws JudgeError when no response can be
/// obtained, JudgeParseError when it cannot be parsed.
JudgeScores evaluate_judge(const Sample& sample, const JudgeContext& ctx);

} // namespace textedit
