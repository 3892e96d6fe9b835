#include "textedit/judge.hpp"

#include "textedit/hash.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace textedit {

using nlohmann::json;

namespace {

constexpr std::string_view kTemplate = R"PROMPT(You are an expert Forensic Image Analyst and Design QA Specialist.

Your task is to evaluate the quality of an AI-edited image by comparing three images.

Images Provided (in order):
1. Original Image: The unedited source image containing the text "{raw_text}".
2. Ground Truth Image: A human-created reference showing the ideal result with text "{target_text}".
3. Edited Image: The AI-generated result to be evaluated.

Editing Task Information:
- Text to Remove: "{raw_text}"
- Text to Add: "{target_text}"

EVALUATION RUBRIC (1-5 SCORING SYSTEM)

Please evaluate the Edited Image based on the following 5 dimensions. Use the strict criteria below to assign a score from 1 to 5.

Q1. [Target Text Accuracy]
Focus: Spelling, erasure correctness, and legibility of "{target_text}".
- 5 (Perfect): Exact spelling match (case-sensitive). Old text completely erased. No ghosting.
- 4 (Minor Flaw): Text is correct but has 1 character error/typo, OR slight casing issue, OR extremely faint ghosting visible only on close inspection.
- 3 (Readable but Flawed): 2-3 character errors but word is recognizable. OR visible ghosting/remnants of old text that affect cleanness.
- 2 (Major Error): >3 character errors (misspelled heavily). OR old text is still clearly readable (failed erasure).
- 1 (Failed): Text is missing, gibberish, or completely wrong word. Old text remains fully intact.

Q2. [Non-Target Text Preservation]
Focus: Preservation/legibility of background text other than the edited target.
- 5 (Perfect): All non-target text is 100% preserved and legible, identical to Original/GT.
- 4 (Good): Main background text is preserved. Minor distant text is slightly softened/blurred but still readable.
- 3 (Fair): One or two secondary text elements are blurred, damaged, or missing.
- 2 (Poor): Critical nearby text (directly adjacent to target) is damaged, erased, or hallucinated.
- 1 (Destructive): Widespread destruction or hallucination of background text.

Q3. [Global Scene Integrity]
Focus: Geometric stability of non-edited areas (background, objects, people).
- 5 (Perfect): Pixel-perfect preservation of background geometry. No distortions.
- 4 (Good): Almost perfect, but very minor shift (<1%) in background lines or perspective.
- 3 (Noticeable): Visible distortion in straight lines (wavy), or slight warping of objects/faces.
- 2 (Severe): Major structural damage (e.g., a person's face is melted, a building collapsed).
- 1 (Chaos): The scene structure is completely changed or nonsensical compared to Original.

Q4. [Local Realism & Artifacts]
Focus: Inpainting quality, edge cleanliness, and seamlessness around the edited area.
- 5 (Excellent): Invisible edit. Clean edges, no halos, no smudges. Professional quality.
- 4 (Good): Very minor artifacts (e.g., slight pixelation on zoom-in), but looks natural at a glance.
- 3 (Fair): Visible seams, blurry rectangular patch, or "smudged" look around the text.
- 2 (Poor): Obvious artifacts, messy edges, or white/black box artifacts.
- 1 (Garbage): The edited area looks like a corrupted file or pure noise.

Q5. [Aesthetic & Lighting Harmony]
Focus: Style matching (font), lighting, shadow, and texture harmony.
- 5 (Seamless): Font style matches the GT/Context perfectly. Lighting/shadows are physically correct. Texture (grain) matches the photo.
- 4 (Integrated): Good style match. Lighting is mostly correct. Texture is slightly too smooth but acceptable.
- 3 (Artificial): Text looks "pasted on" (digital sticker look). Font style is generic (e.g., Arial) and clashes with the scene.
- 2 (Disjointed): Wrong color, wrong perspective, or no shading where needed.
- 1 (Mismatch): Text floats awkwardly, completely ignoring the scene's physics and style.

FINAL OUTPUT FORMAT (JSON ONLY)
You must output a valid JSON object containing two dictionaries: score (integers) and reason (strings).

Example Output:
Instruction: "Replace the text 'MUSIC' with 'PARTY'."
{
  "score": {
    "Q1": 5,
    "Q2": 1,
    "Q3": 2,
    "Q4": 5,
    "Q5": 4
  },
  "reason": {
    "Q1": "The target text 'PARTY' is spelled correctly and is clearly legible. The specific target text to remove ( 'MUSIC' ) is completely gone with no ghosting.",
    "Q2": "The model caused widespread destruction of non-target text. 'NIGHT CLUB', '31 OCT', 'FREE DRINKS', 'LIVE', and 'PRICE' were all erroneously removed, and '10$' was corrupted into the hallucinated text '1TY'.",
    "Q3": "Global scene integrity is severely compromised. The skeleton's arm holding the maraca was erased, leaving the maraca floating in mid-air, which breaks the physical logic of the illustration.",
    "Q4": "Despite the semantic failures, the technical quality of the image is excellent. The edges are sharp, the background inpainting is smooth, and there are no visible pixel artifacts, blur, or noise.",
    "Q5": "The font style selected for 'PARTY' integrates well with the hand-drawn vector aesthetic of the poster, although the color is a darker maroon compared to the bright red of the original text."
  }
}

Do not output any markdown or conversational text outside the JSON block.
)PROMPT";

constexpr std::array<const char*, kJudgeDimensions> kKeys{"Q1", "Q2", "Q3", "Q4", "Q5"};

// Single pass so substituted text is never itself re-scanned for placeholders.
std::string render(std::string_view tmpl, const std::string& raw_text, const std::string& target_text)
{
    static constexpr std::string_view raw_ph = "{raw_text}";
    static constexpr std::string_view tgt_ph = "{target_text}";
    std::string out;
    out.reserve(tmpl.size() + 8 * (raw_text.size() + target_text.size()));
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl.substr(i, raw_ph.size()) == raw_ph) {
            out += raw_text;
            i += raw_ph.size();
        } else if (tmpl.substr(i, tgt_ph.size()) == tgt_ph) {
            out += target_text;
            i += tgt_ph.size();
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

// [begin, end) of the first balanced {...} in `text`, honoring JSON strings.
std::optional<std::string_view> first_balanced_object(std::string_view text)
{
    const std::size_t begin = text.find('{');
    if (begin == std::string_view::npos)
        return std::nullopt;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = begin; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0)
                return text.substr(begin, i - begin + 1);
        }
    }
    return std::nullopt;
}

std::string safe_component(const std::string& s)
{
    std::string out;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.substr(0, 64);
}

} // namespace

std::string_view judge_prompt_template()
{
    return kTemplate;
}

JudgePrompt build_judge_prompt(const Sample& sample)
{
    if (sample.gt_image.empty())
        throw JudgeError("sample '" + sample.id + "' has no ground-truth image");
    JudgePrompt p;
    p.system_text = render(kTemplate, sample.raw_text, sample.target_text);
    p.image_slots = {sample.source_image, sample.gt_image, sample.edited_image};
    return p;
}

JudgeRaw parse_judge_response(std::string_view text)
{
    const auto object = first_balanced_object(text);
    if (!object)
        throw JudgeParseError("judge response contains no JSON object");
    json doc;
    try {
        doc = json::parse(*object);
    } catch (const json::exception& e) {
        throw JudgeParseError(std::string("judge response is not valid JSON: ") + e.what());
    }

    auto score = doc.find("score");
    if (score == doc.end() || !score->is_object())
        throw JudgeParseError("judge response has no 'score' object");
    auto reason = doc.find("reason");
    if (reason == doc.end() || !reason->is_object())
        throw JudgeParseError("judge response has no 'reason' object");

    JudgeRaw raw;
    for (std::size_t i = 0; i < kJudgeDimensions; ++i) {
        const char* key = kKeys[i];
        auto s = score->find(key);
        if (s == score->end())
            throw JudgeParseError(std::string("judge response is missing score ") + key);
        if (!s->is_number_integer())
            throw JudgeParseError(std::string("score ") + key + " is not an integer: " + s->dump());
        const auto v = s->get<std::int64_t>();
        if (v < 1 || v > 5)
            throw JudgeParseError(std::string("score ") + key + " = " + std::to_string(v) + " is outside [1, 5]");
        raw.scores[i] = static_cast<int>(v);

        auto r = reason->find(key);
        if (r == reason->end())
            throw JudgeParseError(std::string("judge response is missing reason ") + key);
        if (!r->is_string())
            throw JudgeParseError(std::string("reason ") + key + " is not a string");
        raw.reasons[i] = r->get<std::string>();
    }
    return raw;
}

std::string serialize_judge_raw(const JudgeRaw& raw)
{
    json score = json::object();
    json reason = json::object();
    for (std::size_t i = 0; i < kJudgeDimensions; ++i) {
        score[kKeys[i]] = raw.scores[i];
        reason[kKeys[i]] = raw.reasons[i];
    }
    return json{{"score", score}, {"reason", reason}}.dump(2);
}

double normalize_likert(int score)
{
    if (score < 1 || score > 5)
        throw std::out_of_range("Likert score " + std::to_string(score) + " is outside [1, 5]");
    return (score - 1) / 4.0;
}

void JudgeWeights::validate() const
{
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("judge weights must be non-negative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("judge weights must sum to 1, got " + std::to_string(sum));
}

JudgeWeights JudgeWeights::parse(std::string_view csv)
{
    JudgeWeights out;
    std::size_t i = 0;
    while (true) {
        const auto comma = csv.find(',');
        std::string_view item = csv.substr(0, comma);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (i >= kJudgeDimensions)
            throw std::invalid_argument("expected exactly 5 judge weights");
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
            throw std::invalid_argument("judge weight '" + std::string(item) + "' is not a number");
        out.w[i++] = v;
        if (comma == std::string_view::npos)
            break;
        csv.remove_prefix(comma + 1);
    }
    if (i != kJudgeDimensions)
        throw std::invalid_argument("expected exactly 5 judge weights");
    out.validate();
    return out;
}

double weighted_vscore(const JudgeRaw& raw, const JudgeWeights& weights)
{
    double primary = weights.w[0] * normalize_likert(raw.scores[0]);
    if (raw.scores[0] < 4)
        return primary;
    double secondary = 0.0;
    for (std::size_t i = 1; i < kJudgeDimensions; ++i)
        secondary += weights.w[i] * normalize_likert(raw.scores[i]);
    return primary + secondary;
}

JudgeScores score_judge_raw(const JudgeRaw& raw, const JudgeWeights& weights)
{
    JudgeScores s;
    s.raw = raw;
    for (std::size_t i = 0; i < kJudgeDimensions; ++i)
        s.normalized[i] = normalize_likert(raw.scores[i]);
    s.v_score = weighted_vscore(raw, weights);
    return s;
}

// Client ---------------------------------------------------------------------

HttpJudgeClient::HttpJudgeClient(HttpJudgeConfig cfg)
    : cfg_(std::move(cfg))
    , endpoint_(parse_endpoint(cfg_.endpoint))
{
}

std::string HttpJudgeClient::complete(const JudgePrompt& prompt)
{
    const json body{{"model", cfg_.model_id},
                    {"prompt", prompt.system_text},
                    {"images", {prompt.image_slots[0], prompt.image_slots[1], prompt.image_slots[2]}}};
    const std::string reply = post_json(endpoint_, body.dump(), token_from_env(cfg_.token_env), cfg_.retry);
    const json doc = json::parse(reply, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("text") && doc["text"].is_string())
        return doc["text"].get<std::string>();
    return reply;
}

// Cache ----------------------------------------------------------------------

ResponseCache::ResponseCache(std::filesystem::path dir, bool create)
    : dir_(std::move(dir))
{
    if (create)
        std::filesystem::create_directories(dir_);
    else if (!std::filesystem::is_directory(dir_))
        throw JudgeError("judge cache directory " + dir_.string() + " does not exist");
}

std::filesystem::path ResponseCache::entry_path(const std::string& sample_id, const std::string& model_id) const
{
    const std::string tag = sha256_hex(sample_id + '\n' + model_id).substr(0, 12);
    return dir_ / (safe_component(sample_id) + "__" + safe_component(model_id) + "__" + tag + ".json");
}

std::optional<std::string> ResponseCache::get(const std::string& sample_id, const std::string& model_id,
                                              const std::string& prompt_hash) const
{
    std::ifstream in(entry_path(sample_id, model_id));
    if (!in)
        return std::nullopt;
    const json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        return std::nullopt;
    if (doc.value("sample_id", "") != sample_id || doc.value("model_id", "") != model_id ||
        doc.value("prompt_hash", "") != prompt_hash)
        return std::nullopt;
    auto r = doc.find("response");
    if (r == doc.end() || !r->is_string())
        return std::nullopt;
    return r->get<std::string>();
}

void ResponseCache::put(const std::string& sample_id, const std::string& model_id, const std::string& prompt_hash,
                        const std::string& response) const
{
    const auto path = entry_path(sample_id, model_id);
    auto tmp = path;
    tmp += ".tmp." + sha256_hex(response).substr(0, 8);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw JudgeError("cannot write judge cache entry " + tmp.string());
        out << json{{"sample_id", sample_id},
                    {"model_id", model_id},
                    {"prompt_hash", prompt_hash},
                    {"response", response}}
                   .dump(2)
            << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::string prompt_hash(const JudgePrompt& prompt)
{
    std::string material = prompt.system_text;
    for (const auto& slot : prompt.image_slots) {
        material += '\0';
        material += slot;
    }
    return sha256_hex(material);
}

JudgeScores evaluate_judge(const Sample& sample, const JudgeContext& ctx)
{
    const JudgePrompt prompt = build_judge_prompt(sample);
    const std::string hash = prompt_hash(prompt);
    const std::string& model = ctx.client ? ctx.client->model_id() : ctx.model_id;

    std::optional<std::string> response;
    if (ctx.cache)
        response = ctx.cache->get(sample.id, model, hash);
    if (!response) {
        if (!ctx.client)
            throw JudgeError("no cached judge response for sample '" + sample.id + "' (replay mode)");
        try {
            response = ctx.client->complete(prompt);
        } catch (const TransportError& e) {
            throw JudgeError("judge request for sample '" + sample.id + "' failed: " + e.what());
        }
        if (ctx.cache)
            ctx.cache->put(sample.id, model, hash, *response);
    }
    try {
        return score_judge_raw(parse_judge_response(*response), ctx.weights);
    } catch (const JudgeParseError& e) {
        throw JudgeParseError("sample '" + sample.id + "': " + e.what());
    }
}

} // namespace textedit
