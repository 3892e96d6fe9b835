// Serial reference vs OpenMP batch evaluation on the synthetic corpus.

#include "support/synthetic.hpp"
#include "textedit/evaluator.hpp"
#include "textedit/textsim.hpp"

#include <benchmark/benchmark.h>

using namespace textedit;

namespace {

struct Data {
    std::vector<Sample> samples;
    OcrFile ocr;

    Data()
    {
        // four copies of the 2148-sample corpus with distinct ids
        const auto base = textedit::testing::synthetic_corpus();
        for (int copy = 0; copy < 4; ++copy) {
            for (auto s : base) {
                s.id = std::to_string(copy) + s.id;
                samples.push_back(std::move(s));
            }
        }
        ocr = textedit::testing::synthetic_ocr(samples);
    }
};

const Data& data()
{
    static const Data d;
    return d;
}

void BM_ClassicSerial(benchmark::State& state)
{
    const auto& d = data();
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_classic_batch_serial(d.samples, d.ocr, {}, {}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.samples.size()));
}

void BM_ClassicParallel(benchmark::State& state)
{
    const auto& d = data();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_classic_batch(d.samples, d.ocr, {}, {}, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.samples.size()));
}

void BM_Levenshtein(benchmark::State& state)
{
    SeededRng rng(9);
    std::vector<std::pair<std::u32string, std::u32string>> pairs;
    for (int i = 0; i < 1000; ++i) {
        pairs.emplace_back(utf8_decode(textedit::testing::random_word(rng, static_cast<std::size_t>(state.range(0)))),
                           utf8_decode(textedit::testing::random_word(rng, static_cast<std::size_t>(state.range(0)))));
    }
    for (auto _ : state) {
        for (const auto& [a, b] : pairs)
            benchmark::DoNotOptimize(levenshtein(a, b));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}

} // namespace

BENCHMARK(BM_ClassicSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassicParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Levenshtein)->Arg(8)->Arg(32)->Arg(128);

BENCHMARK_MAIN();
