#pragma once

#include "textedit/classic_metrics.hpp"
#include "textedit/corpus.hpp"
#include "textedit/judge.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace textedit {

enum class SampleStatus { ok, ocr_missing, judge_failed, provider_failed };

inline constexpr std::size_t kStatusCount = 4;

std::string_view to_string(SampleStatus s);

struct SampleResult {
    std::string id;
    std::string category_id;
    SampleStatus status = SampleStatus::ok;
    std::optional<ClassicScores> classic;
    std::optional<JudgeScores> judge;
    std::string error;  // diagnostic for failed samples

    bool operator==(const SampleResult&) const = default;
};

/// Report columns, in table order.
enum class Metric { OA, OP, OR, F1, NED, CLIP, AES, TA, TP, SI, LR, VC, Avg };

inline constexpr std::size_t kMetricCount = 13;

std::string_view to_string(Metric m);

struct GroupStats {
    std::string key;  // "overall", "Real", "Virtual" or a leaf id
    std::size_t count = 0;
    std::array<std::size_t, kStatusCount> by_status{};
    std::array<std::optional<double>, kMetricCount> means{};

    std::size_t ok() const { return by_status[0]; }
    std::size_t failed() const { return count - ok(); }
};

struct ReportMetadata {
    std::string toolkit_version;
    std::string config_hash;
    JudgeWeights weights;
    PenaltyConfig thresholds;
    bool dimension_cutoff = false;
};

struct AggregateReport {
    std::vector<GroupStats> groups;
    std::array<bool, kMetricCount> metric_present{};  // any sample carried the metric
    ReportMetadata metadata;

    const GroupStats* group(std::string_view key) const;
};

struct AggregateOptions {
    /// Zero TP/SI/LR/VC per sample when TA < 4, as the weighted score does.
    bool dimension_cutoff = false;
};

/// Group means over status-ok samples, summed in ascending id order. Groups:
/// overall, Real, Virtual, then every taxonomy leaf (empty ones included).
AggregateReport aggregate(std::span<const SampleResult> results, const Taxonomy& taxonomy = Taxonomy::builtin(),
                          const AggregateOptions& opts = {});

enum class ReportFormat { structured, tabular, human };

std::optional<ReportFormat> parse_report_format(std::string_view s);

/// structured: JSON at full precision; tabular: CSV rounded half-up to two
/// decimals; human: aligned text table.
std::string emit_report(const AggregateReport& report, ReportFormat format);

/// One JSON object per sample, sorted by id.
std::string emit_sample_details(std::span<const SampleResult> results);

/// Decimal half-up (away from zero) rounding of the shortest round-trip
/// representation of `v`.
std::string format_half_up(double v, int decimals = 2);

} // namespace textedit
