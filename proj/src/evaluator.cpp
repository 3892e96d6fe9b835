#include "textedit/evaluator.hpp"

#include <algorithm>
#include <exception>
#include <map>


namespace textedit {

SampleResult classic_result(const Sample& sample, const OcrFile& ocr, const SemanticSources& semantic,
                            const PenaltyConfig& cfg)
{
    SampleResult r;
    r.id = sample.id;
    r.category_id = sample.category_id;
    try {
        r.classic = evaluate_classic(sample, ocr, semantic, cfg);
    } catch (const OcrMissing& e) {
        r.status = SampleStatus::ocr_missing;
        r.error = e.what();
    } catch (const ProviderFailure& e) {
        r.status = SampleStatus::provider_failed;
        r.error = e.what();
    }
    return r;
}

SampleResult judge_result(const Sample& sample, const JudgeContext& ctx)
{
    SampleResult r;
    r.id = sample.id;
    r.category_id = sample.category_id;
    try {
        r.judge = evaluate_judge(sample, ctx);
    } catch (const std::exception& e) {
        r.status = SampleStatus::judge_failed;
        r.error = e.what();
    }
    return r;
}

namespace {

void sort_by_id(std::vector<SampleResult>& results)
{
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
}

// Exceptions must not leave an OpenMP region; anything unexpected is kept
// per slot and rethrown after the loop.
template <class Kernel>
std::vector<SampleResult> run_parallel(std::span<const Sample> samples, int parallelism, Kernel kernel)
{
    std::vector<SampleResult> out(samples.size());
    std::vector<std::exception_ptr> errors(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, parallelism))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = kernel(samples[static_cast<std::size_t>(i)]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }
    sort_by_id(out);
    return out;
}

} // namespace

std::vector<SampleResult> evaluate_classic_batch(std::span<const Sample> samples, const OcrFile& ocr,
                                                 const SemanticSources& semantic, const PenaltyConfig& cfg,
                                                 int parallelism)
{
    return run_parallel(samples, parallelism,
                        [&](const Sample& s) { return classic_result(s, ocr, semantic, cfg); });
}

std::vector<SampleResult> evaluate_classic_batch_serial(std::span<const Sample> samples, const OcrFile& ocr,
                                                        const SemanticSources& semantic, const PenaltyConfig& cfg)
{
    std::vector<SampleResult> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(classic_result(s, ocr, semantic, cfg));
    sort_by_id(out);
    return out;
}

std::vector<SampleResult> evaluate_judge_batch(std::span<const Sample> samples, const JudgeContext& ctx,
                                               int parallelism)
{
    return run_parallel(samples, parallelism, [&](const Sample& s) { return judge_result(s, ctx); });
}

std::vector<SampleResult> evaluate_judge_batch_serial(std::span<const Sample> samples, const JudgeContext& ctx)
{
    std::vector<SampleResult> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(judge_result(s, ctx));
    sort_by_id(out);
    return out;
}

std::vector<SampleResult> merge_results(std::span<const SampleResult> classic, std::span<const SampleResult> judge)
{
    std::map<std::string, SampleResult> merged;
    for (const auto& c : classic)
        merged.emplace(c.id, c);
    for (const auto& j : judge) {
        auto [it, inserted] = merged.emplace(j.id, j);
        if (inserted)
            continue;
        SampleResult& m = it->second;
        m.judge = j.judge;
        if (m.status == SampleStatus::ok && j.status != SampleStatus::ok) {
            m.status = j.status;
            m.error = j.error;
        }
    }
    std::vector<SampleResult> out;
    out.reserve(merged.size());
    for (auto& [id, r] : merged)
        out.push_back(std::move(r));
    return out;
}

} // namespace textedit
