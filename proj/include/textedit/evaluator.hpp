#pragma once

#include "textedit/classic_metrics.hpp"
#include "textedit/judge.hpp"
#include "textedit/report.hpp"

#include <span>
#include <vector>

namespace textedit {

// Batch drivers. Each has an OpenMP version taking a worker count and a
// plain serial loop kept as the reference; both return one result per input
// sample, sorted by sample id, with per-sample failures folded into status.

std::vector<SampleResult> evaluate_classic_batch(std::span<const Sample> samples, const OcrFile& ocr,
                                                 const SemanticSources& semantic, const PenaltyConfig& cfg,
                                                 int parallelism);
std::vector<SampleResult> evaluate_classic_batch_serial(std::span<const Sample> samples, const OcrFile& ocr,
                                                        const SemanticSources& semantic, const PenaltyConfig& cfg);

std::vector<SampleResult> evaluate_judge_batch(std::span<const Sample> samples, const JudgeContext& ctx,
                                               int parallelism);
std::vector<SampleResult> evaluate_judge_batch_serial(std::span<const Sample> samples, const JudgeContext& ctx);

/// Joins classic and judge results of the same samples. A sample is ok only
/// when both halves are; the first failure wins otherwise.
std::vector<SampleResult> merge_results(std::span<const SampleResult> classic, std::span<const SampleResult> judge);

/// Per-sample kernels shared by the batch drivers.
SampleResult classic_result(const Sample& sample, const OcrFile& ocr, const SemanticSources& semantic,
                            const PenaltyConfig& cfg);
SampleResult judge_result(const Sample& sample, const JudgeContext& ctx);

} // namespace textedit
