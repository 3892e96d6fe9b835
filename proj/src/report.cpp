#include "textedit/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace textedit {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(SampleStatus s)
{
    switch (s) {
    case SampleStatus::ok: return "ok";
    case SampleStatus::ocr_missing: return "ocr-missing";
    case SampleStatus::judge_failed: return "judge-failed";
    case SampleStatus::provider_failed: return "provider-failed";
    }
    return "ok";
}

std::string_view to_string(Metric m)
{
    static constexpr std::array<std::string_view, kMetricCount> names{
        "OA", "OP", "OR", "F1", "NED", "CLIP", "AES", "TA", "TP", "SI", "LR", "VC", "Avg"};
    return names[static_cast<std::size_t>(m)];
}

const GroupStats* AggregateReport::group(std::string_view key) const
{
    for (const auto& g : groups) {
        if (g.key == key)
            return &g;
    }
    return nullptr;
}

namespace {

using MetricValues = std::array<std::optional<double>, kMetricCount>;

MetricValues metric_values(const SampleResult& r, const AggregateOptions& opts)
{
    MetricValues v{};
    if (r.classic) {
        const auto& c = *r.classic;
        v[0] = c.ocr_accuracy;
        v[1] = c.ocr_precision;
        v[2] = c.ocr_recall;
        v[3] = c.ocr_f1;
        v[4] = c.roi_ned;
        v[5] = c.clip_score;
        v[6] = c.aesthetic;
    }
    if (r.judge) {
        const auto& j = *r.judge;
        const bool cut = opts.dimension_cutoff && j.raw.scores[0] < 4;
        for (std::size_t i = 0; i < kJudgeDimensions; ++i)
            v[7 + i] = (cut && i > 0) ? 0.0 : j.normalized[i];
        v[12] = j.v_score;
    }
    return v;
}

struct Accumulator {
    GroupStats stats;
    std::array<double, kMetricCount> sum{};
    std::array<std::size_t, kMetricCount> n{};

    void add(const SampleResult& r, const MetricValues& values)
    {
        ++stats.count;
        ++stats.by_status[static_cast<std::size_t>(r.status)];
        if (r.status != SampleStatus::ok)
            return;
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            if (values[m]) {
                sum[m] += *values[m];
                ++n[m];
            }
        }
    }

    GroupStats finish()
    {
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            if (n[m] > 0)
                stats.means[m] = sum[m] / static_cast<double>(n[m]);
        }
        return stats;
    }
};

} // namespace

AggregateReport aggregate(std::span<const SampleResult> results, const Taxonomy& taxonomy,
                          const AggregateOptions& opts)
{
    std::vector<std::size_t> order(results.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return results[a].id < results[b].id; });

    std::vector<Accumulator> acc;
    acc.push_back({{"overall"}});
    acc.push_back({{"Real"}});
    acc.push_back({{"Virtual"}});
    std::map<std::string, std::size_t, std::less<>> leaf_index;
    for (const auto& leaf : taxonomy.leaves()) {
        leaf_index.emplace(leaf.leaf_id(), acc.size());
        acc.push_back({{leaf.leaf_id()}});
    }

    AggregateReport report;
    for (std::size_t i : order) {
        const SampleResult& r = results[i];
        const MetricValues values = metric_values(r, opts);
        for (std::size_t m = 0; m < kMetricCount; ++m)
            report.metric_present[m] = report.metric_present[m] || values[m].has_value();

        const TaxonomyNode& node = taxonomy.classify(r.category_id);
        acc[0].add(r, values);
        acc[node.major == Major::Real ? 1 : 2].add(r, values);
        acc[leaf_index.at(node.leaf_id())].add(r, values);
    }
    for (auto& a : acc)
        report.groups.push_back(a.finish());
    report.metadata.dimension_cutoff = opts.dimension_cutoff;
    return report;
}

std::optional<ReportFormat> parse_report_format(std::string_view s)
{
    if (s == "structured" || s == "json")
        return ReportFormat::structured;
    if (s == "tabular" || s == "csv")
        return ReportFormat::tabular;
    if (s == "human" || s == "text")
        return ReportFormat::human;
    return std::nullopt;
}

std::string format_half_up(double v, int decimals)
{
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
    if (ec != std::errc())
        return "nan";
    std::string s(buf, end);
    bool negative = false;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s.erase(0, 1);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        dot = s.size();
        s += '.';
    }
    s.append(static_cast<std::size_t>(decimals + 1), '0');
    const bool round_up = s[dot + 1 + static_cast<std::size_t>(decimals)] >= '5';
    std::string digits = s.substr(0, dot) + s.substr(dot + 1, static_cast<std::size_t>(decimals));
    if (round_up) {
        std::size_t i = digits.size();
        while (i > 0) {
            --i;
            if (digits[i] == '9') {
                digits[i] = '0';
            } else {
                ++digits[i];
                break;
            }
            if (i == 0)
                digits.insert(digits.begin(), '1');
        }
    }
    const std::size_t int_len = digits.size() - static_cast<std::size_t>(decimals);
    std::string out = digits.substr(0, int_len);
    if (decimals > 0)
        out += "." + digits.substr(int_len);
    if (negative && out.find_first_not_of("0.") != std::string::npos)
        out.insert(out.begin(), '-');
    return out;
}

namespace {

ordered_json metadata_json(const ReportMetadata& md)
{
    ordered_json j;
    j["toolkit_version"] = md.toolkit_version;
    j["config_hash"] = md.config_hash;
    j["weights"] = md.weights.w;
    j["thresholds"] = {{"fail_penalty", md.thresholds.fail_penalty},
                       {"residual_sim_threshold", md.thresholds.residual_sim_threshold},
                       {"target_presence_threshold", md.thresholds.target_presence_threshold},
                       {"iou_threshold", md.thresholds.iou_threshold},
                       {"min_confidence", md.thresholds.min_confidence}};
    j["dimension_cutoff"] = md.dimension_cutoff;
    return j;
}

std::vector<std::size_t> present_metrics(const AggregateReport& r)
{
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < kMetricCount; ++m) {
        if (r.metric_present[m])
            out.push_back(m);
    }
    return out;
}

std::string emit_structured(const AggregateReport& r)
{
    ordered_json doc;
    doc["metadata"] = metadata_json(r.metadata);
    ordered_json groups = ordered_json::array();
    for (const auto& g : r.groups) {
        ordered_json jg;
        jg["group"] = g.key;
        jg["count"] = g.count;
        jg["ok"] = g.ok();
        ordered_json failures;
        for (std::size_t s = 1; s < kStatusCount; ++s)
            failures[std::string(to_string(static_cast<SampleStatus>(s)))] = g.by_status[s];
        jg["failed"] = failures;
        ordered_json means;
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            if (!r.metric_present[m])
                continue;
            const auto name = std::string(to_string(static_cast<Metric>(m)));
            means[name] = g.means[m] ? ordered_json(*g.means[m]) : ordered_json(nullptr);
        }
        jg["means"] = means;
        groups.push_back(std::move(jg));
    }
    doc["groups"] = std::move(groups);
    return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> table_rows(const AggregateReport& r)
{
    const auto cols = present_metrics(r);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"group", "count", "ok", "failed"};
    for (std::size_t m : cols)
        header.emplace_back(to_string(static_cast<Metric>(m)));
    rows.push_back(std::move(header));
    for (const auto& g : r.groups) {
        std::vector<std::string> row{g.key, std::to_string(g.count), std::to_string(g.ok()), std::to_string(g.failed())};
        for (std::size_t m : cols)
            row.push_back(g.means[m] ? format_half_up(*g.means[m]) : "");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string emit_tabular(const AggregateReport& r)
{
    std::ostringstream out;
    for (const auto& row : table_rows(r)) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

std::string emit_human(const AggregateReport& r)
{
    auto rows = table_rows(r);
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    for (auto& row : rows) {
        for (auto& cell : row) {
            if (cell.empty())
                cell = "-";
        }
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == 0) {
                out << row[i] << std::string(width[i] - row[i].size(), ' ');
            } else {
                out << "  " << std::string(std::max(width[i], row[i].size()) - row[i].size(), ' ') << row[i];
            }
        }
        out << '\n';
    };
    line(rows[0]);
    std::size_t total = 0;
    for (std::size_t i = 0; i < width.size(); ++i)
        total += width[i] + (i ? 2 : 0);
    out << std::string(total, '-') << '\n';
    for (std::size_t i = 1; i < rows.size(); ++i)
        line(rows[i]);
    return out.str();
}

} // namespace

std::string emit_report(const AggregateReport& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::structured: return emit_structured(report);
    case ReportFormat::tabular: return emit_tabular(report);
    case ReportFormat::human: return emit_human(report);
    }
    throw std::invalid_argument("unknown report format");
}

std::string emit_sample_details(std::span<const SampleResult> results)
{
    std::vector<const SampleResult*> sorted;
    sorted.reserve(results.size());
    for (const auto& r : results)
        sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

    std::string out;
    for (const auto* r : sorted) {
        ordered_json j;
        j["id"] = r->id;
        j["category_id"] = r->category_id;
        j["status"] = std::string(to_string(r->status));
        if (!r->error.empty())
            j["error"] = r->error;
        if (r->classic) {
            const auto& c = *r->classic;
            ordered_json jc;
            jc["OA"] = c.ocr_accuracy;
            jc["OP"] = c.ocr_precision;
            jc["OR"] = c.ocr_recall;
            jc["F1"] = c.ocr_f1;
            jc["NED"] = c.roi_ned;
            jc["CLIP"] = c.clip_score ? ordered_json(*c.clip_score) : ordered_json(nullptr);
            jc["AES"] = c.aesthetic ? ordered_json(*c.aesthetic) : ordered_json(nullptr);
            j["classic"] = jc;
        }
        if (r->judge) {
            const auto& jd = *r->judge;
            ordered_json jj;
            jj["scores"] = jd.raw.scores;
            jj["normalized"] = jd.normalized;
            jj["v_score"] = jd.v_score;
            jj["reasons"] = jd.raw.reasons;
            j["judge"] = jj;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

} // namespace textedit
