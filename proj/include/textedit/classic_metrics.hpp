#pragma once

#include "textedit/corpus.hpp"
#include "textedit/geometry.hpp"
#include "textedit/semantic_metrics.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace textedit {

/// Thresholds and penalties of the text-centric metrics.
struct PenaltyConfig {
    double fail_penalty = 0.2;               // multiplier for a failed edit
    double residual_sim_threshold = 0.9;     // similarity to the source text that counts as residue
    double target_presence_threshold = 0.7;  // similarity to the target text that counts as present
    double iou_threshold = 0.5;              // detection-to-target assignment
    double min_confidence = 0.0;             // detections below this are dropped; 0 keeps everything

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Overrides fields present in a JSON object with the same field names.
    static PenaltyConfig from_json(std::istream& in, PenaltyConfig base);
    static PenaltyConfig from_json(std::istream& in);
};

struct ClassicScores {
    double ocr_accuracy = 0.0;
    double ocr_precision = 0.0;
    double ocr_recall = 0.0;
    double ocr_f1 = 0.0;
    double roi_ned = 0.0;
    std::optional<double> clip_score;  // absent without an embedding source
    std::optional<double> aesthetic;

    bool operator==(const ClassicScores&) const = default;
};

/// Max similarity of the target-region texts to `target_text`, scaled by the
/// fail penalty when the source text is still there and the target is not.
/// Texts are whitespace-normalized first.
double ocr_accuracy(std::span<const std::string> target_texts, std::string_view target_text,
                    std::string_view source_text, const PenaltyConfig& cfg = {});
double ocr_accuracy(std::span<const OcrDetection> target_dets, std::string_view target_text,
                    std::string_view source_text, const PenaltyConfig& cfg = {});

/// Mean over generated background texts of the best match among the original
/// ones. 1 when nothing was generated.
double ocr_precision(std::span<const std::string> generated, std::span<const std::string> original);
double ocr_precision(std::span<const OcrDetection> generated, std::span<const OcrDetection> original);

/// Mean over original background texts of the best match among the generated
/// ones. 1 when there was nothing to keep.
double ocr_recall(std::span<const std::string> generated, std::span<const std::string> original);
double ocr_recall(std::span<const OcrDetection> generated, std::span<const OcrDetection> original);

double ocr_f1(double precision, double recall);

/// S(roi, target), scaled by the fail penalty when S(roi, source) exceeds the
/// residual threshold.
double roi_ned(std::string_view roi_text, std::string_view target_text, std::string_view source_text,
               const PenaltyConfig& cfg = {});

/// Joins detections whose box center lies in `region`, ordered by center y
/// then x, with single spaces.
std::string roi_text_from_detections(std::span<const OcrDetection> detections, const Polygon& region);

class OcrMissing : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ProviderFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Embedding inputs for CLIPScore and the aesthetic score. Either member may
/// be null; the matching score is then left empty.
struct SemanticSources {
    EmbeddingProvider* embeddings = nullptr;
    const AestheticSource* aesthetic = nullptr;
};

/// All classic scores of one sample. Throws OcrMissing when either image has
/// no OCR entry, ProviderFailure when an embedding lookup fails.
ClassicScores evaluate_classic(const Sample& sample, const OcrFile& ocr, const SemanticSources& semantic,
                               const PenaltyConfig& cfg = {});

} // namespace textedit
