#include <benchmark/benchmark.h>

#include "driftlab/driftstats.hpp"
#include "driftlab/model.hpp"
#include "driftlab/protocols.hpp"
#include "driftlab/synthgen.hpp"
#include "driftlab/textprep.hpp"

using namespace driftlab;

namespace {

std::vector<std::string> letter_words(std::size_t n, const std::string& prefix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string w = prefix;
        for (std::size_t v = i;; v /= 26) {
            w.push_back(static_cast<char>('a' + v % 26));
            if (v < 26) break;
        }
        out.push_back(std::move(w));
    }
    return out;
}

DriftSpec bench_spec(std::size_t n) {
    DriftSpec spec;
    spec.seed = 99;
    spec.span_start = *parse_time("2019-01-01T00:00:00Z");
    spec.span_end = *parse_time("2020-01-01T00:00:00Z");
    spec.n_comments = n;
    spec.clean_base = letter_words(300, "saub");
    spec.abusive_base = letter_words(60, "wuest");
    spec.class_prior = {{UtcTime{0}, 0.45}};
    spec.label_rule = {0.3, std::nullopt, 0.02, 0.98};
    spec.density_low = 0.0;
    spec.density_high = 0.6;
    return spec;
}

const Corpus& bench_corpus() {
    static const Corpus corpus = generate(bench_spec(4000));
    return corpus;
}

NormalizerConfig bench_normalizer() {
    NormalizerConfig config;
    config.stopwords = default_german_stopwords();
    return config;
}

}  // namespace

static void BM_NormalizeGerman(benchmark::State& state) {
    const NormalizerConfig config = bench_normalizer();
    const std::string text =
        "Die Virologen erklärten die Maskenpflicht, aber die Kommentare wurden "
        "immer schlimmer und die Moderation kam nicht hinterher";
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize(text, config));
    }
}
BENCHMARK(BM_NormalizeGerman);

static void BM_BuildFeatureSpace(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    const NormalizerConfig config = bench_normalizer();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_feature_space(corpus, config));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_BuildFeatureSpace);

static void BM_Vectorize(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    const NormalizerConfig config = bench_normalizer();
    const FeatureSpace fs = build_feature_space(corpus, config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vectorize(corpus, fs, config));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_Vectorize);

static void BM_TrainEpoch(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    const NormalizerConfig config = bench_normalizer();
    const FeatureSpace fs = build_feature_space(corpus, config);
    const DocTermMatrix matrix = vectorize(corpus, fs, config);
    TrainHyperparams hp;
    hp.epochs = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train(matrix, hp));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(matrix.rows.size()));
}
BENCHMARK(BM_TrainEpoch);

static void BM_SpearmanPair(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    const NormalizerConfig config = bench_normalizer();
    const auto span = *corpus.time_span();
    const UtcTime mid{(span.first.seconds + span.second.seconds) / 2};
    const auto a = tfidf_rank_list(slice_by_time(corpus, span.first, mid), config);
    const auto b = tfidf_rank_list(slice_by_time(corpus, mid, span.second.plus_seconds(1)), config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spearman(a, b));
    }
}
BENCHMARK(BM_SpearmanPair);

static void BM_Generate(benchmark::State& state) {
    const DriftSpec spec = bench_spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate(spec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
