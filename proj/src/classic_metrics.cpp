#include "textedit/classic_metrics.hpp"

#include "textedit/textsim.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>

namespace textedit {

using nlohmann::json;

void PenaltyConfig::validate() const
{
    auto unit = [](double v, const char* name) {
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in (0, 1], got " + std::to_string(v));
    };
    unit(fail_penalty, "fail_penalty");
    unit(residual_sim_threshold, "residual_sim_threshold");
    unit(target_presence_threshold, "target_presence_threshold");
    unit(iou_threshold, "iou_threshold");
    if (!(min_confidence >= 0.0 && min_confidence <= 1.0))
        throw std::invalid_argument("min_confidence must lie in [0, 1], got " + std::to_string(min_confidence));
}

PenaltyConfig PenaltyConfig::from_json(std::istream& in, PenaltyConfig base)
{
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("thresholds file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("thresholds file must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number())
            throw std::invalid_argument("threshold '" + key + "' must be a number");
        const double v = value.get<double>();
        if (key == "fail_penalty")
            base.fail_penalty = v;
        else if (key == "residual_sim_threshold")
            base.residual_sim_threshold = v;
        else if (key == "target_presence_threshold")
            base.target_presence_threshold = v;
        else if (key == "iou_threshold")
            base.iou_threshold = v;
        else if (key == "min_confidence")
            base.min_confidence = v;
        else
            throw std::invalid_argument("unknown threshold '" + key + "'");
    }
    base.validate();
    return base;
}

PenaltyConfig PenaltyConfig::from_json(std::istream& in)
{
    return from_json(in, PenaltyConfig{});
}

namespace {

std::u32string prepared(std::string_view s)
{
    return utf8_decode(normalize_text(s).value);
}

std::vector<std::u32string> prepared(std::span<const std::string> texts)
{
    std::vector<std::u32string> out;
    out.reserve(texts.size());
    for (const auto& t : texts)
        out.push_back(prepared(t));
    return out;
}

std::vector<std::string> texts_of(std::span<const OcrDetection> dets)
{
    std::vector<std::string> out;
    out.reserve(dets.size());
    for (const auto& d : dets)
        out.push_back(d.text);
    return out;
}

// Mean over `from` of the best similarity into `to`. Per-item scores are
// summed in ascending order so the result does not depend on list order.
double mean_best_match(const std::vector<std::u32string>& from, const std::vector<std::u32string>& to)
{
    std::vector<double> best;
    best.reserve(from.size());
    for (const auto& a : from) {
        double m = 0.0;
        for (const auto& b : to)
            m = std::max(m, normalized_similarity(a, b));
        best.push_back(m);
    }
    std::sort(best.begin(), best.end());
    double sum = 0.0;
    for (double v : best)
        sum += v;
    return sum / static_cast<double>(best.size());
}

} // namespace

double ocr_accuracy(std::span<const std::string> target_texts, std::string_view target_text,
                    std::string_view source_text, const PenaltyConfig& cfg)
{
    const std::u32string tgt = prepared(target_text);
    const std::u32string src = prepared(source_text);

    if (target_texts.empty())
        return tgt.empty() ? 1.0 : 0.0;  // clean erasure vs nothing rendered

    double best_target = 0.0;
    bool source_residue = false;
    for (const auto& t : prepared(target_texts)) {
        best_target = std::max(best_target, normalized_similarity(t, tgt));
        if (normalized_similarity(t, src) >= cfg.residual_sim_threshold)
            source_residue = true;
    }
    const bool target_absent = best_target < cfg.target_presence_threshold;
    return best_target * (source_residue && target_absent ? cfg.fail_penalty : 1.0);
}

double ocr_accuracy(std::span<const OcrDetection> target_dets, std::string_view target_text,
                    std::string_view source_text, const PenaltyConfig& cfg)
{
    const auto texts = texts_of(target_dets);
    return ocr_accuracy(std::span<const std::string>(texts), target_text, source_text, cfg);
}

double ocr_precision(std::span<const std::string> generated, std::span<const std::string> original)
{
    if (generated.empty())
        return 1.0;
    return mean_best_match(prepared(generated), prepared(original));
}

double ocr_precision(std::span<const OcrDetection> generated, std::span<const OcrDetection> original)
{
    const auto g = texts_of(generated);
    const auto o = texts_of(original);
    return ocr_precision(std::span<const std::string>(g), std::span<const std::string>(o));
}

double ocr_recall(std::span<const std::string> generated, std::span<const std::string> original)
{
    if (original.empty())
        return 1.0;
    return mean_best_match(prepared(original), prepared(generated));
}

double ocr_recall(std::span<const OcrDetection> generated, std::span<const OcrDetection> original)
{
    const auto g = texts_of(generated);
    const auto o = texts_of(original);
    return ocr_recall(std::span<const std::string>(g), std::span<const std::string>(o));
}

double ocr_f1(double precision, double recall)
{
    if (precision + recall == 0.0)
        return 0.0;
    if (precision == recall)
        return precision;
    return 2.0 * precision * recall / (precision + recall);
}

double roi_ned(std::string_view roi_text, std::string_view target_text, std::string_view source_text,
               const PenaltyConfig& cfg)
{
    const std::u32string roi = prepared(roi_text);
    const double to_target = normalized_similarity(roi, prepared(target_text));
    const double to_source = normalized_similarity(roi, prepared(source_text));
    return to_target * (to_source > cfg.residual_sim_threshold ? cfg.fail_penalty : 1.0);
}

std::string roi_text_from_detections(std::span<const OcrDetection> detections, const Polygon& region)
{
    struct Item {
        Point center;
        std::string text;
    };
    std::vector<Item> inside;
    for (const auto& d : detections) {
        if (center_in_region(d, region))
            inside.push_back({polygon_bbox(d.polygon).center(), normalize_text(d.text).value});
    }
    std::stable_sort(inside.begin(), inside.end(), [](const Item& a, const Item& b) {
        if (a.center.y != b.center.y)
            return a.center.y < b.center.y;
        return a.center.x < b.center.x;
    });
    std::string out;
    for (const auto& it : inside) {
        if (it.text.empty())
            continue;
        if (!out.empty())
            out += ' ';
        out += it.text;
    }
    return out;
}

namespace {

std::vector<OcrDetection> confident(const std::vector<OcrDetection>& dets, double min_confidence)
{
    std::vector<OcrDetection> out;
    out.reserve(dets.size());
    for (const auto& d : dets) {
        if (d.confidence >= min_confidence)
            out.push_back(d);
    }
    return out;
}

} // namespace

ClassicScores evaluate_classic(const Sample& sample, const OcrFile& ocr, const SemanticSources& semantic,
                               const PenaltyConfig& cfg)
{
    const OcrEntry* source = ocr.find(sample.id, ImageRole::source);
    if (!source)
        throw OcrMissing("missing OCR entry '" + ocr_key(sample.id, ImageRole::source) + "'");
    const OcrEntry* edited = ocr.find(sample.id, ImageRole::edited);
    if (!edited)
        throw OcrMissing("missing OCR entry '" + ocr_key(sample.id, ImageRole::edited) + "'");

    const auto source_dets = confident(source->detections, cfg.min_confidence);
    const auto edited_dets = confident(edited->detections, cfg.min_confidence);
    const auto source_regions = assign_regions(source_dets, sample.target_region, cfg.iou_threshold);
    const auto edited_regions = assign_regions(edited_dets, sample.target_region, cfg.iou_threshold);

    ClassicScores scores;
    scores.ocr_accuracy = ocr_accuracy(std::span<const OcrDetection>(edited_regions.target), sample.target_text,
                                       sample.raw_text, cfg);
    scores.ocr_precision = ocr_precision(std::span<const OcrDetection>(edited_regions.background),
                                         std::span<const OcrDetection>(source_regions.background));
    scores.ocr_recall = ocr_recall(std::span<const OcrDetection>(edited_regions.background),
                                   std::span<const OcrDetection>(source_regions.background));
    scores.ocr_f1 = ocr_f1(scores.ocr_precision, scores.ocr_recall);

    const std::string roi = edited->roi_text ? *edited->roi_text
                                             : roi_text_from_detections(edited_dets, sample.target_region);
    scores.roi_ned = roi_ned(roi, sample.target_text, sample.raw_text, cfg);

    try {
        std::optional<Embedding> image;
        if (semantic.embeddings) {
            image = semantic.embeddings->fetch(embedding_key(sample.id, EmbeddingKind::edited_image));
            const Embedding caption = semantic.embeddings->fetch(embedding_key(sample.id, EmbeddingKind::caption));
            scores.clip_score = clip_score(*image, caption);
        }
        if (semantic.aesthetic) {
            if (semantic.aesthetic->needs_embedding() && !image)
                throw EmbeddingError("aesthetic head configured without an embedding source");
            scores.aesthetic = semantic.aesthetic->score(embedding_key(sample.id, EmbeddingKind::edited_image),
                                                         image ? &*image : nullptr);
        }
    } catch (const EmbeddingError& e) {
        throw ProviderFailure("sample '" + sample.id + "': " + e.what());
    }
    return scores;
}

} // namespace textedit
