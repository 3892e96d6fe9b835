// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs offline against synthetic data and tests/fixtures/e2e.

#include "support/synthetic.hpp"
#include "textedit/classic_metrics.hpp"
#include "textedit/evaluator.hpp"
#include "textedit/judge.hpp"
#include "textedit/report.hpp"
#include "textedit/textsim.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace textedit;
namespace fs = std::filesystem;

#ifndef TEXTEDIT_FIXTURE_DIR
#define TEXTEDIT_FIXTURE_DIR "tests/fixtures/e2e"
#endif

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1 --------------------------------------------------------------------------

std::size_t naive_distance(std::u32string_view a, std::u32string_view b)
{
    if (a.empty())
        return b.size();
    if (b.empty())
        return a.size();
    const std::size_t sub = naive_distance(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
    return std::min({naive_distance(a.substr(1), b) + 1, naive_distance(a, b.substr(1)) + 1, sub});
}

Outcome edit_distance_oracle()
{
    SeededRng rng(1);
    auto word = [&] {
        std::u32string s;
        for (auto n = rng.below(8); n > 0; --n)
            s += static_cast<char32_t>(U'a' + rng.below(3));
        return s;
    };
    const auto t0 = Clock::now();
    constexpr int kPairs = 12000;
    int mismatches = 0;
    for (int i = 0; i < kPairs; ++i) {
        const auto a = word(), b = word();
        mismatches += levenshtein(a, b) != naive_distance(a, b);
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 10.0, fmt("%d pairs, %d mismatches, %.2f s", kPairs, mismatches, secs)};
}

// 2 --------------------------------------------------------------------------

Outcome formula_fixtures()
{
    const double s = normalized_similarity("MUSIC", "MUSICAL");
    const double f = ocr_f1(0.6, 0.4);
    const double j = iou({0, 0, 2, 2}, {1, 0, 3, 2});
    const bool ok = std::abs(s - 5.0 / 7.0) <= 1e-12 && std::abs(f - 0.48) <= 1e-12 && std::abs(j - 1.0 / 3.0) <= 1e-12;
    return {ok, fmt("S=%.17g F1=%.17g IoU=%.17g", s, f, j)};
}

// 3 --------------------------------------------------------------------------

Outcome penalty_semantics()
{
    const std::vector<std::string> dets{"MUSIC"};
    const double oa = ocr_accuracy(std::span<const std::string>(dets), "MUSES", "MUSIC");
    const double ned = roi_ned("MUSIC", "MUSES", "MUSIC");

    // same fixture through the full per-sample path
    Sample sample;
    sample.id = "m";
    sample.category_id = "1.1.1";
    sample.source_image = "m.png";
    sample.raw_text = "MUSIC";
    sample.target_text = "MUSES";
    sample.target_region = textedit::testing::rect(0, 0, 100, 30);
    OcrFile ocr;
    ocr.insert("m/source", {{textedit::testing::det("MUSIC", 0, 0, 100, 30)}, {}});
    ocr.insert("m/edited", {{textedit::testing::det("MUSIC", 0, 0, 100, 30)}, {}});
    const auto c = evaluate_classic(sample, ocr, {});

    const bool ok = oa == 0.12 && ned == 0.12 && oa == 0.6 * 0.2 && c.ocr_accuracy == 0.12 && c.roi_ned == 0.12;
    return {ok, fmt("OA=%.17g NED=%.17g (pipeline OA=%.17g NED=%.17g)", oa, ned, c.ocr_accuracy, c.roi_ned)};
}

// 4 --------------------------------------------------------------------------

Outcome judge_aggregation()
{
    const JudgeWeights w;
    int tuples = 0, violations = 0;
    auto v_of = [&](std::array<int, 5> s) {
        JudgeRaw raw;
        raw.scores = s;
        return weighted_vscore(raw, w);
    };
    for (int code = 0; code < 3125; ++code) {
        std::array<int, 5> s{};
        for (int i = 0, c = code; i < 5; ++i, c /= 5)
            s[i] = 1 + c % 5;
        ++tuples;
        const double v = v_of(s);
        if (!(v >= 0.0 && v <= 1.0))
            ++violations;
        if (s[0] < 4 && v != w.w[0] * normalize_likert(s[0]))
            ++violations;
        for (int i = 0; i < 5; ++i) {
            if (s[i] == 5)
                continue;
            auto up = s;
            ++up[i];
            if (v_of(up) < v)
                ++violations;
        }
    }
    const double fig = v_of({5, 1, 2, 5, 4});
    const bool ok = violations == 0 && tuples == 3125 && std::abs(fig - 0.6) <= 1e-12;
    return {ok, fmt("%d tuples, %d violations, v(5,1,2,5,4)=%.17g", tuples, violations, fig)};
}

// 5 --------------------------------------------------------------------------

Outcome likert_table()
{
    const double expected[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    bool ok = true;
    std::string got;
    for (int s = 1; s <= 5; ++s) {
        const double v = normalize_likert(s);
        ok = ok && v == expected[s - 1];
        got += fmt("%d->%g ", s, v);
    }
    return {ok, got};
}

// 6 --------------------------------------------------------------------------

Outcome metric_bounds()
{
    SeededRng rng(6);
    auto list = [&] {
        std::vector<std::string> out(rng.below(5));
        for (auto& w : out)
            w = rng.below(6) == 0 ? std::string() : textedit::testing::random_word(rng, 6, 4);
        return out;
    };
    auto shuffled = [&](std::vector<std::string> v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[rng.below(i)]);
        return v;
    };
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    using Span = std::span<const std::string>;

    constexpr int kCases = 100000;
    int violations = 0;
    for (int i = 0; i < kCases; ++i) {
        const auto gen = list(), orig = list(), tgt_set = list();
        const auto tgt = rng.below(8) == 0 ? std::string() : textedit::testing::random_word(rng, 6, 4);
        const auto src = textedit::testing::random_word(rng, 6, 4);
        const std::string roi = gen.empty() ? std::string() : gen[0];

        const double oa = ocr_accuracy(Span(tgt_set), tgt, src);
        const double p = ocr_precision(Span(gen), Span(orig));
        const double r = ocr_recall(Span(gen), Span(orig));
        const double f = ocr_f1(p, r);
        const double ned = roi_ned(roi, tgt, src);
        for (double v : {oa, p, r, f, ned})
            violations += !in_unit(v);

        const auto g2 = shuffled(gen), o2 = shuffled(orig);
        violations += ocr_precision(Span(g2), Span(o2)) != p;
        violations += ocr_recall(Span(g2), Span(o2)) != r;
        violations += ocr_precision(Span(orig), Span(gen)) != ocr_recall(Span(gen), Span(orig));
    }
    return {violations == 0, fmt("%d cases, %d violations", kCases, violations)};
}

// 7 --------------------------------------------------------------------------

std::string manifest_bytes(std::span<const Sample> s)
{
    std::ostringstream out;
    emit_manifest(out, s);
    return out.str();
}

Outcome miniset_sampler()
{
    const auto corpus = textedit::testing::synthetic_corpus();
    const auto a = sample_miniset(corpus, 500, 7);
    const auto b = sample_miniset(corpus, 500, 7);
    std::set<std::string> cats;
    for (const auto& s : a)
        cats.insert(s.category_id);
    const bool same = manifest_bytes(a) == manifest_bytes(b);

    const auto small = sample_miniset(corpus, 18, 7);
    std::map<std::string, int> per;
    for (const auto& s : small)
        ++per[s.category_id];
    const bool one_each =
        small.size() == 18 && per.size() == 18 && std::all_of(per.begin(), per.end(), [](auto& kv) { return kv.second == 1; });

    const bool ok = corpus.size() == 2148 && a.size() == 500 && cats.size() == 18 && same && one_each;
    return {ok, fmt("corpus %zu, subset %zu, %zu categories, identical=%s, total-18 one-each=%s", corpus.size(),
                    a.size(), cats.size(), same ? "yes" : "no", one_each ? "yes" : "no")};
}

// 8 --------------------------------------------------------------------------

Outcome e2e_oracle()
{
    const fs::path dir = TEXTEDIT_FIXTURE_DIR;
    std::ifstream manifest_in(dir / "manifest.jsonl");
    const auto samples = parse_manifest(manifest_in);
    OcrFile ocr;
    for (const char* name : {"ocr_source.json", "ocr_edited.json"}) {
        std::ifstream in(dir / name);
        ocr.merge(load_ocr_detections(in, samples));
    }
    auto embeddings = FileEmbeddingProvider::load(dir / "embeddings.json");
    const auto aesthetic = AestheticSource::load(dir / "aesthetic_head.json");

    const fs::path cache_dir = fs::temp_directory_path() / "textedit_acceptance_e2e";
    fs::remove_all(cache_dir);
    const ResponseCache cache(cache_dir);
    std::ifstream responses(dir / "judge_responses.jsonl");
    for (std::string line; std::getline(responses, line);) {
        if (line.empty())
            continue;
        const auto rec = nlohmann::json::parse(line);
        const auto id = rec["id"].get<std::string>();
        const auto it = std::find_if(samples.begin(), samples.end(), [&](const Sample& s) { return s.id == id; });
        cache.put(id, "fixture-judge", prompt_hash(build_judge_prompt(*it)), rec["response"].get<std::string>());
    }
    JudgeContext ctx;
    ctx.cache = &cache;
    ctx.model_id = "fixture-judge";

    const auto classic = evaluate_classic_batch(samples, ocr, {&embeddings, &aesthetic}, {}, 4);
    const auto judged = evaluate_judge_batch(samples, ctx, 4);
    const auto report = aggregate(merge_results(classic, judged));
    fs::remove_all(cache_dir);

    std::ifstream expected_in(dir / "expected.json");
    const auto expected = nlohmann::json::parse(expected_in)["groups"];
    int checked = 0, mismatches = 0;
    std::string first;
    auto miss = [&](const std::string& what) {
        if (first.empty())
            first = what;
        ++mismatches;
    };
    for (const auto& [key, exp] : expected.items()) {
        const GroupStats* g = report.group(key);
        if (!g) {
            miss("group " + key);
            continue;
        }
        if (g->count != exp["count"].get<std::size_t>() || g->ok() != exp["ok"].get<std::size_t>())
            miss(key + " counts");
        for (std::size_t m = 0; m < kMetricCount; ++m) {
            const std::string name(to_string(static_cast<Metric>(m)));
            if (!exp["means"].contains(name)) {
                if (g->means[m])
                    miss(key + "." + name + " unexpected");
                continue;
            }
            ++checked;
            const double want = exp["means"][name].get<double>();
            if (!g->means[m]) {
                miss(key + "." + name + " missing");
                continue;
            }
            const bool embedding_based = name == "CLIP" || name == "AES";
            const bool equal = embedding_based ? std::abs(*g->means[m] - want) <= 1e-9 : *g->means[m] == want;
            if (!equal)
                miss(fmt("%s.%s got %.17g want %.17g", key.c_str(), name.c_str(), *g->means[m], want));
        }
    }
    const bool ok = mismatches == 0 && report.group("Real") && report.group("Virtual") && checked > 0;
    return {ok, fmt("%zu samples, %d group means checked, %d mismatches%s%s", samples.size(), checked, mismatches,
                    first.empty() ? "" : "; first: ", first.c_str())};
}

// 9 --------------------------------------------------------------------------

std::string machine_output(std::span<const SampleResult> results)
{
    auto report = aggregate(results);
    report.metadata.toolkit_version = "acceptance";
    report.metadata.config_hash = "fixed";
    return emit_report(report, ReportFormat::structured) + emit_report(report, ReportFormat::tabular) +
           emit_sample_details(results);
}

Outcome determinism_and_scale()
{
    const auto corpus = textedit::testing::synthetic_corpus();
    const auto ocr = textedit::testing::synthetic_ocr(corpus);

    const auto t0 = Clock::now();
    const auto one = evaluate_classic_batch(corpus, ocr, {}, {}, 1);
    const double secs = seconds_since(t0);
    const auto eight = evaluate_classic_batch(corpus, ocr, {}, {}, 8);
    const auto serial = evaluate_classic_batch_serial(corpus, ocr, {}, {});

    const std::string a = machine_output(one);
    const bool identical = a == machine_output(eight) && a == machine_output(serial);
    const bool ok = one.size() == 2148 && secs < 10.0 && identical;
    return {ok, fmt("%zu samples in %.3f s single-threaded, 1 vs 8 workers identical=%s (%zu bytes)", one.size(), secs,
                    identical ? "yes" : "no", a.size())};
}

// 10 -------------------------------------------------------------------------

Outcome clip_scale_invariance()
{
    SeededRng rng(10);
    constexpr int kCases = 20000;
    int violations = 0;
    double worst = 0.0;
    for (int i = 0; i < kCases; ++i) {
        const std::size_t dim = 2 + rng.below(767);
        Embedding v, u;
        for (std::size_t k = 0; k < dim; ++k) {
            v.values.push_back(rng.unit() * 2 - 1);
            u.values.push_back(rng.unit() * 2 - 1);
        }
        const double base = clip_score(v, u);
        const double alpha = std::exp(rng.unit() * 40 - 20), beta = std::exp(rng.unit() * 40 - 20);
        for (auto& x : v.values) x *= alpha;
        for (auto& x : u.values) x *= beta;
        const double diff = std::abs(clip_score(v, u) - base);
        worst = std::max(worst, diff);
        violations += diff > 1e-9;
    }
    return {violations == 0, fmt("%d cases, %d violations, max deviation %.3g", kCases, violations, worst)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"edit-distance oracle", edit_distance_oracle},
        {"formula fixtures", formula_fixtures},
        {"penalty semantics", penalty_semantics},
        {"judge aggregation (exhaustive)", judge_aggregation},
        {"Likert normalization table", likert_table},
        {"metric bounds and symmetries", metric_bounds},
        {"MiniSet sampler", miniset_sampler},
        {"end-to-end oracle fixture", e2e_oracle},
        {"determinism and scale", determinism_and_scale},
        {"CLIP scale invariance", clip_scale_invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("AC%-2zu %s  %-32s %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
