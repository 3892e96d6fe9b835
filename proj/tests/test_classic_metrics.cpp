#include "support/synthetic.hpp"
#include "textedit/classic_metrics.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace textedit;
using textedit::testing::det;
using textedit::testing::rect;

namespace {

using Texts = std::vector<std::string>;

double oa(const Texts& dets, std::string_view tgt, std::string_view src, const PenaltyConfig& cfg = {})
{
    return ocr_accuracy(std::span<const std::string>(dets), tgt, src, cfg);
}

double prec(const Texts& g, const Texts& o)
{
    return ocr_precision(std::span<const std::string>(g), std::span<const std::string>(o));
}

double rec(const Texts& g, const Texts& o)
{
    return ocr_recall(std::span<const std::string>(g), std::span<const std::string>(o));
}

Sample sample(std::string id, std::string raw, std::string tgt)
{
    Sample s;
    s.id = std::move(id);
    s.category_id = "2.1";
    s.source_image = "x.png";
    s.raw_text = std::move(raw);
    s.target_text = std::move(tgt);
    s.target_region = rect(0, 0, 100, 20);
    return s;
}

} // namespace

TEST(OcrAccuracy, PenaltyFixture)
{
    EXPECT_EQ(oa({"MUSIC"}, "MUSES", "MUSIC"), 0.12);
    EXPECT_EQ(oa({"MUSES"}, "MUSES", "MUSIC"), 1.0);
}

TEST(OcrAccuracy, PenaltyNeedsBothConditions)
{
    // residue but target present (0.8 >= 0.7): no penalty
    EXPECT_EQ(oa({"ABCDE", "ABCDX"}, "ABCDY", "ABCDE"), 0.8);
    // target absent but no residue
    EXPECT_EQ(oa({"QQQQQ"}, "ABCDE", "VWXYZ"), 0.0);
    EXPECT_NEAR(oa({"ABXYZ"}, "ABCDE", "VWXYZ"), 0.4, 1e-15);
}

TEST(OcrAccuracy, ResidueThresholdInclusive)
{
    // S("ABCDEFGHIJ", "ABCDEFGHIX") == 0.9 exactly
    EXPECT_EQ(oa({"ABCDEFGHIX"}, "zzzzzzzzzz", "ABCDEFGHIJ"), 0.0);
    const double s = oa({"ABCDEFGHIX", "ABCDEFGHIJKLMN"}, "ABCDEFGHI", "ABCDEFGHIJ");
    EXPECT_EQ(s, 0.9);  // target present, not penalized
    PenaltyConfig cfg;
    cfg.target_presence_threshold = 0.95;
    EXPECT_NEAR(oa({"ABCDEFGHIX"}, "ABCDEFGHI", "ABCDEFGHIJ", cfg), 0.9 * 0.2, 1e-15);
}

TEST(OcrAccuracy, EmptyTargetSet)
{
    EXPECT_EQ(oa({}, "NEW", "OLD"), 0.0);
    EXPECT_EQ(oa({}, "", "OLD"), 1.0);  // clean erasure
    EXPECT_EQ(oa({"OLD"}, "", "OLD"), 0.0);
}

TEST(OcrAccuracy, NormalizesWhitespace)
{
    EXPECT_EQ(oa({"  GRAND   OPENING "}, "GRAND OPENING", "SALE"), 1.0);
}

TEST(PrecisionRecall, Values)
{
    EXPECT_EQ(prec({"HELLO", "WORLD"}, {"HELLO", "WORLD"}), 1.0);
    EXPECT_EQ(rec({"HELLO"}, {"HELLO", "WORLD"}), (1.0 + 0.2) / 2.0);
    EXPECT_EQ(prec({"HELLO"}, {"HELLO", "WORLD"}), 1.0);
    EXPECT_EQ(prec({"ABCD", "XXXX"}, {"ABCE"}), (0.75 + 0.0) / 2.0);
}

TEST(PrecisionRecall, EmptySets)
{
    EXPECT_EQ(prec({}, {"A"}), 1.0);
    EXPECT_EQ(prec({}, {}), 1.0);
    EXPECT_EQ(rec({"A"}, {}), 1.0);
    EXPECT_EQ(rec({}, {"A"}), 0.0);
    EXPECT_EQ(prec({"A"}, {}), 0.0);
}

TEST(PrecisionRecall, SwapSymmetry)
{
    const Texts a{"foo", "bar", "bazz"}, b{"fob", "qux"};
    EXPECT_EQ(prec(a, b), rec(b, a));
    EXPECT_EQ(rec(a, b), prec(b, a));
}

TEST(F1, Values)
{
    EXPECT_NEAR(ocr_f1(0.6, 0.4), 0.48, 1e-12);
    EXPECT_EQ(ocr_f1(0.0, 0.0), 0.0);
    EXPECT_EQ(ocr_f1(1.0, 0.0), 0.0);
    EXPECT_EQ(ocr_f1(0.3, 0.3), 0.3);
    EXPECT_EQ(ocr_f1(1.0, 1.0), 1.0);
}

TEST(RoiNed, Values)
{
    EXPECT_EQ(roi_ned("MUSIC", "MUSES", "MUSIC"), 0.12);
    EXPECT_EQ(roi_ned("MUSES", "MUSES", "MUSIC"), 1.0);
    EXPECT_EQ(roi_ned("", "NEW", "OLD"), 0.0);
    EXPECT_EQ(roi_ned("", "", "OLD"), 1.0);
}

TEST(RoiNed, ThresholdExclusive)
{
    // S == 0.9 exactly is not residue here
    EXPECT_EQ(roi_ned("ABCDEFGHIX", "ABCDEFGHIX", "ABCDEFGHIJ"), 1.0);
    EXPECT_NEAR(roi_ned("ABCDEFGHIJK", "ABCDEFGHIJK", "ABCDEFGHIJKL"), 0.2, 1e-15);
}

TEST(RoiText, FallbackOrdersByCenter)
{
    const std::vector<OcrDetection> dets{
        det("WORLD", 50, 0, 90, 10), det("HELLO", 0, 0, 40, 10), det("second", 0, 12, 40, 20),
        det("", 0, 0, 5, 5), det("outside", 200, 200, 220, 210),
    };
    EXPECT_EQ(roi_text_from_detections(dets, rect(0, 0, 100, 20)), "HELLO WORLD second");
}

TEST(EvaluateClassic, PerfectEdit)
{
    const Sample s = sample("p", "OLD SIGN", "NEW SIGN");
    OcrFile ocr;
    ocr.insert("p/source", {{det("OLD SIGN", 0, 0, 100, 20), det("cafe", 0, 50, 40, 60)}, {}});
    ocr.insert("p/edited", {{det("NEW SIGN", 1, 0, 100, 20), det("cafe", 0, 50, 40, 60)}, {}});
    const auto c = evaluate_classic(s, ocr, {});
    EXPECT_EQ(c.ocr_accuracy, 1.0);
    EXPECT_EQ(c.ocr_precision, 1.0);
    EXPECT_EQ(c.ocr_recall, 1.0);
    EXPECT_EQ(c.ocr_f1, 1.0);
    EXPECT_EQ(c.roi_ned, 1.0);
    EXPECT_FALSE(c.clip_score);
    EXPECT_FALSE(c.aesthetic);
}

TEST(EvaluateClassic, FailedEditAndRoiOverride)
{
    const Sample s = sample("f", "MUSIC", "MUSES");
    OcrFile ocr;
    ocr.insert("f/source", {{det("MUSIC", 0, 0, 100, 20)}, {}});
    ocr.insert("f/edited", {{det("MUSIC", 0, 0, 100, 20)}, std::string("MUSES")});
    const auto c = evaluate_classic(s, ocr, {});
    EXPECT_EQ(c.ocr_accuracy, 0.12);
    EXPECT_EQ(c.roi_ned, 1.0);  // provided roi_text wins over the fallback
}

TEST(EvaluateClassic, MinConfidenceFilter)
{
    const Sample s = sample("m", "OLD", "NEW");
    OcrFile ocr;
    ocr.insert("m/source", {{det("OLD", 0, 0, 100, 20)}, {}});
    ocr.insert("m/edited", {{det("NEW", 0, 0, 100, 20, 0.4), det("junk", 0, 50, 9, 60, 0.2)}, {}});
    EXPECT_EQ(evaluate_classic(s, ocr, {}).ocr_precision, 0.0);
    PenaltyConfig cfg;
    cfg.min_confidence = 0.5;
    const auto c = evaluate_classic(s, ocr, {}, cfg);
    EXPECT_EQ(c.ocr_precision, 1.0);
    EXPECT_EQ(c.ocr_accuracy, 0.0);
}

TEST(EvaluateClassic, MissingOcr)
{
    const Sample s = sample("x", "A", "B");
    OcrFile ocr;
    ocr.insert("x/source", {});
    EXPECT_THROW(evaluate_classic(s, ocr, {}), OcrMissing);
}

TEST(EvaluateClassic, EmbeddingFailureIsProviderFailure)
{
    const Sample s = sample("e", "A", "B");
    OcrFile ocr;
    ocr.insert("e/source", {});
    ocr.insert("e/edited", {});
    FileEmbeddingProvider empty("none", 2, {});
    SemanticSources sem;
    sem.embeddings = &empty;
    EXPECT_THROW(evaluate_classic(s, ocr, sem), ProviderFailure);
}

TEST(PenaltyConfig, JsonOverridesAndValidation)
{
    std::istringstream in(R"({"fail_penalty": 0.5, "min_confidence": 0.3})");
    const auto cfg = PenaltyConfig::from_json(in);
    EXPECT_EQ(cfg.fail_penalty, 0.5);
    EXPECT_EQ(cfg.min_confidence, 0.3);
    EXPECT_EQ(cfg.residual_sim_threshold, 0.9);

    std::istringstream unknown(R"({"penalty": 0.5})");
    EXPECT_THROW(PenaltyConfig::from_json(unknown), std::invalid_argument);
    std::istringstream range(R"({"iou_threshold": 1.5})");
    EXPECT_THROW(PenaltyConfig::from_json(range), std::invalid_argument);
}
