#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "driftlab/csv.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/hash.hpp"
#include "driftlab/report_io.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/synthgen.hpp"
#include "driftlab/textprep.hpp"

namespace driftlab::cli {
namespace {

namespace fs = std::filesystem;

std::string now_utc() {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    return format_time(UtcTime{secs.count()});
}

NormalizerConfig normalizer_from(const CommonOptions& common) {
    NormalizerConfig config;
    config.stemmer = common.stemmer;
    if (common.stopwords_path.empty()) {
        config.stopwords = default_german_stopwords();
    } else {
        config.stopwords = parse_stopword_list(read_file(common.stopwords_path));
    }
    return config;
}

UtcTime parse_time_arg(const std::string& text, const std::string& flag) {
    const auto t = parse_time(text);
    if (!t) throw DataError(flag + ": unparseable time '" + text + "'");
    return *t;
}

Corpus load_corpus(const std::string& path, std::uint64_t& input_hash, IngestSummary* summary_out = nullptr) {
    const std::string bytes = read_file(path);
    input_hash = fnv1a64(bytes);
    std::istringstream in(bytes);
    IngestResult result = ingest_csv(in, {});
    for (const auto& w : result.summary.warnings) std::cerr << "warning: " << w << '\n';
    if (summary_out) *summary_out = result.summary;
    return std::move(result.corpus);
}

void append_common_config(RunManifest& manifest, const CommonOptions& common) {
    manifest.config.emplace_back("stopwords", common.stopwords_path.empty()
                                                  ? "<builtin:german>"
                                                  : common.stopwords_path);
    manifest.config.emplace_back("stemmer", common.stemmer);
    manifest.config.emplace_back("max_terms", std::to_string(common.max_terms));
    manifest.config.emplace_back("min_freq", std::to_string(common.min_corpus_freq));
    manifest.config.emplace_back("bigrams", common.bigrams ? "1" : "0");
    manifest.config.emplace_back("l2", format_double(common.l2_penalty));
    manifest.config.emplace_back("epochs", std::to_string(common.epochs));
    manifest.config.emplace_back("lr", format_double(common.learning_rate));
    manifest.config.emplace_back("seed", std::to_string(common.seed));
}

}  // namespace

ExperimentParams CommonOptions::experiment_params() const {
    ExperimentParams params;
    params.normalizer = normalizer_from(*this);
    params.features.max_terms = max_terms;
    params.features.min_corpus_freq = min_corpus_freq;
    params.features.bigrams = bigrams;
    params.train.l2_penalty = l2_penalty;
    params.train.epochs = epochs;
    params.train.learning_rate = learning_rate;
    return params;
}

int run_ingest(const IngestArgs& args) {
    RunManifest manifest;
    manifest.command = "ingest";
    manifest.started_utc = now_utc();
    manifest.config.emplace_back("input", args.input);
    manifest.config.emplace_back("strict", args.strict ? "1" : "0");

    const std::string bytes = read_file(args.input);
    manifest.input_hash = fnv1a64(bytes);
    std::istringstream in(bytes);
    IngestResult result = ingest_csv(in, {.strict = args.strict});
    for (const auto& w : result.summary.warnings) std::cerr << "warning: " << w << '\n';

    const std::string summary = ingest_summary_json(result.summary, manifest.run_id());
    const fs::path out_dir(args.out_dir);
    write_file_atomic(out_dir / "ingest_summary.json", summary);
    manifest.finished_utc = now_utc();
    write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));
    std::cout << summary;
    return 0;
}

int run_split_eval(const SplitEvalArgs& args) {
    RunManifest manifest;
    manifest.command = "split-eval";
    manifest.started_utc = now_utc();
    manifest.config.emplace_back("input", args.input);
    manifest.config.emplace_back("eval_start", args.eval_start);
    append_common_config(manifest, args.common);
    manifest.seed = args.common.seed;

    const UtcTime eval_start = parse_time_arg(args.eval_start, "--eval-start");
    Corpus corpus = load_corpus(args.input, manifest.input_hash);
    const ExperimentParams params = args.common.experiment_params();
    manifest.stopwords_hash = stopword_hash(params.normalizer.stopwords);

    const Corpus balanced =
        undersample_balanced(corpus, derive_seed(args.common.seed, {seed_tag::kBalance}));
    const auto span = balanced.time_span();
    if (!span || eval_start <= span->first || eval_start > span->second)
        throw DataError("--eval-start " + args.eval_start + " outside the corpus span");
    const SplitDatasets splits = build_split_datasets(
        balanced, eval_start, derive_seed(args.common.seed, {seed_tag::kSplit}));
    const SplitReport report = run_split_experiment(splits, params, args.common.seed);

    const std::string run_id = manifest.run_id();
    const fs::path out_dir(args.out_dir);
    write_file_atomic(out_dir / "split_report.csv", split_report_csv(report));
    write_file_atomic(out_dir / "split_report.json", split_report_json(report, run_id));
    write_file_atomic(out_dir / "split_plot.csv", split_plot_csv(report));
    manifest.finished_utc = now_utc();
    write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));

    std::cout << "split-eval: " << report.months.size() << " evaluation months, control F1 "
              << format_double(report.control.overall.rejected.f1) << " vs time-stratified F1 "
              << format_double(report.time_stratified.overall.rejected.f1) << "\n";
    return 0;
}

int run_degrade(const DegradeArgs& args) {
    RunManifest manifest;
    manifest.command = "degrade";
    manifest.started_utc = now_utc();
    manifest.config.emplace_back("input", args.input);
    manifest.config.emplace_back("chunks", std::to_string(args.chunks));
    append_common_config(manifest, args.common);
    manifest.seed = args.common.seed;

    Corpus corpus = load_corpus(args.input, manifest.input_hash);
    const ExperimentParams params = args.common.experiment_params();
    manifest.stopwords_hash = stopword_hash(params.normalizer.stopwords);

    const Corpus balanced =
        undersample_balanced(corpus, derive_seed(args.common.seed, {seed_tag::kBalance}));
    const auto chunks = build_chunks(balanced, args.chunks, args.common.seed);
    const DegradationMatrix matrix = run_degradation_matrix(chunks, params, args.common.seed);
    RankListParams rank_params;
    rank_params.max_terms = args.common.max_terms;
    rank_params.min_corpus_freq = args.common.min_corpus_freq;
    const CorrelationMatrix correlation =
        spearman_matrix(chunks, params.normalizer, rank_params);

    const std::string run_id = manifest.run_id();
    const fs::path out_dir(args.out_dir);
    write_file_atomic(out_dir / "f1_matrix.csv", matrix_csv(matrix.chunk_bounds, matrix.f1));
    write_file_atomic(out_dir / "spearman_matrix.csv",
                      matrix_csv(correlation.chunk_bounds, correlation.rho));
    write_file_atomic(out_dir / "degradation.json",
                      degradation_json(matrix, correlation, run_id));
    write_file_atomic(out_dir / "degradation_plot.csv",
                      degradation_plot_csv(matrix, correlation));
    manifest.finished_utc = now_utc();
    write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));

    std::cout << "degrade: " << args.chunks << "x" << args.chunks
              << " matrices written (chunk size " << matrix.chunk_size << ")\n";
    return 0;
}

int run_emerging(const EmergingArgs& args) {
    RunManifest manifest;
    manifest.command = "emerging";
    manifest.started_utc = now_utc();
    manifest.config.emplace_back("input", args.input);
    manifest.config.emplace_back("period_start", args.period_start);
    manifest.config.emplace_back("period_end", args.period_end);
    manifest.config.emplace_back("group_months", std::to_string(args.group_months));
    manifest.config.emplace_back("top", std::to_string(args.top_n));
    manifest.config.emplace_back("stopwords", args.common.stopwords_path.empty()
                                                  ? "<builtin:german>"
                                                  : args.common.stopwords_path);
    manifest.config.emplace_back("stemmer", args.common.stemmer);

    Corpus corpus = load_corpus(args.input, manifest.input_hash);
    const NormalizerConfig normalizer = normalizer_from(args.common);
    manifest.stopwords_hash = stopword_hash(normalizer.stopwords);

    const UtcTime period_start = parse_time_arg(args.period_start, "--period");
    const UtcTime period_end = parse_time_arg(args.period_end, "--period");
    const auto intervals = emerging_words(corpus, period_start, period_end, normalizer,
                                          args.top_n, args.group_months);

    const std::string run_id = manifest.run_id();
    const fs::path out_dir(args.out_dir);
    write_file_atomic(out_dir / "emerging.csv", emerging_csv(intervals));
    write_file_atomic(out_dir / "emerging.json", emerging_json(intervals, run_id));
    manifest.finished_utc = now_utc();
    write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));

    std::cout << "emerging: " << intervals.size() << " intervals written\n";
    return 0;
}

int run_synth(const SynthArgs& args) {
    RunManifest manifest;
    manifest.command = "synth";
    manifest.started_utc = now_utc();
    manifest.config.emplace_back("spec", args.spec_path);
    manifest.config.emplace_back("out", args.out_csv);

    const std::string spec_text = read_file(args.spec_path);
    manifest.input_hash = fnv1a64(spec_text);
    const DriftSpec spec = DriftSpec::from_json_text(spec_text);
    manifest.seed = spec.seed;
    const Corpus corpus = generate(spec);

    std::ostringstream csv;
    write_corpus_csv(csv, corpus);
    const fs::path out_path(args.out_csv);
    write_file_atomic(out_path, csv.str());
    manifest.finished_utc = now_utc();
    fs::path manifest_path = out_path;
    manifest_path += ".manifest.json";
    write_file_atomic(manifest_path, manifest_json(manifest));

    std::cout << "synth: " << corpus.size() << " records (" << corpus.accepted_count()
              << " accepted / " << corpus.rejected_count() << " rejected) -> " << args.out_csv
              << "\n";
    return 0;
}

}  // namespace driftlab::cli
