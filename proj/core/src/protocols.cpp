#include "driftlab/protocols.hpp"

#include <algorithm>

#include "driftlab/errors.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {
namespace {

struct FittedArm {
    FeatureSpace fs;
    TrainedModel model;
};

FittedArm fit_arm(const Corpus& train_corpus, const ExperimentParams& params,
                  std::uint64_t shuffle_seed) {
    FittedArm arm;
    arm.fs = build_feature_space(train_corpus, params.normalizer, params.features);
    TrainHyperparams hp = params.train;
    hp.shuffle_seed = shuffle_seed;
    arm.model = train(vectorize(train_corpus, arm.fs, params.normalizer), hp);
    return arm;
}

Metrics evaluate_on(const FittedArm& arm, const Corpus& eval_corpus,
                    const ExperimentParams& params) {
    const DocTermMatrix m = vectorize(eval_corpus, arm.fs, params.normalizer);
    const Predictions p = predict(arm.model, m);
    return evaluate(p.labels, m.labels);
}

}  // namespace

DatasetComposition composition_of(const Corpus& corpus) {
    DatasetComposition c;
    c.n = corpus.size();
    c.accepted = corpus.accepted_count();
    c.rejected = corpus.rejected_count();
    if (const auto span = corpus.time_span()) {
        c.start = span->first;
        c.end = span->second;
    }
    return c;
}

SplitDatasets build_split_datasets(const Corpus& corpus, UtcTime eval_start, std::uint64_t seed) {
    if (corpus.accepted_count() != corpus.rejected_count())
        throw DataError("build_split_datasets: corpus must be class-balanced "
                        "(apply undersample_balanced first)");
    const auto span = corpus.time_span();
    if (!span) throw DataError("build_split_datasets: empty corpus");
    if (eval_start <= span->first || eval_start > span->second)
        throw DataError("build_split_datasets: eval_start leaves an empty side");

    SplitDatasets out;
    out.eval_start = eval_start;
    out.time_stratified = slice_by_time(corpus, span->first, eval_start);
    Corpus evaluation = slice_by_time(corpus, eval_start, span->second.plus_seconds(1));
    if (out.time_stratified.empty() || evaluation.empty())
        throw DataError("build_split_datasets: eval_start leaves an empty side");

    out.control = undersample_to_size(corpus, out.time_stratified.size(),
                                      derive_seed(seed, {seed_tag::kControlSample}));
    out.evaluation = exclude(evaluation, out.control.id_set());
    if (out.evaluation.empty())
        throw DataError("build_split_datasets: control sample consumed the evaluation period");
    return out;
}

SplitReport run_split_experiment(const SplitDatasets& splits, const ExperimentParams& params,
                                 std::uint64_t seed) {
    SplitReport report;
    report.eval_start = splits.eval_start;
    report.control_stats = composition_of(splits.control);
    report.time_stratified_stats = composition_of(splits.time_stratified);
    report.evaluation_stats = composition_of(splits.evaluation);

    std::size_t control_in_eval = 0;
    for (const auto& r : splits.control.records()) {
        if (r.timestamp >= splits.eval_start) ++control_in_eval;
    }
    report.control_eval_period_fraction =
        splits.control.empty()
            ? 0.0
            : static_cast<double>(control_in_eval) / static_cast<double>(splits.control.size());

    const auto months = monthly_partitions(splits.evaluation);
    for (const auto& m : months) report.months.push_back(m.label);

    const struct {
        const Corpus* corpus;
        ArmResult* result;
        std::uint64_t tag;
    } arms[] = {
        {&splits.control, &report.control, 0},
        {&splits.time_stratified, &report.time_stratified, 1},
    };
    for (const auto& [train_corpus, result, tag] : arms) {
        const FittedArm arm =
            fit_arm(*train_corpus, params, derive_seed(seed, {seed_tag::kTrainShuffle, tag}));
        result->feature_space_hash = arm.fs.content_hash();
        result->n_train = train_corpus->size();
        result->fit_record_ids = arm.fs.fit_record_ids();
        result->overall = evaluate_on(arm, splits.evaluation, params);
        for (const auto& m : months) {
            if (m.corpus.empty())
                result->monthly.push_back(Metrics{});
            else
                result->monthly.push_back(evaluate_on(arm, m.corpus, params));
        }
    }
    return report;
}

std::vector<Corpus> build_chunks(const Corpus& corpus, int k, std::uint64_t seed) {
    if (k < 2) throw DataError("build_chunks: k must be >= 2");
    const auto span = corpus.time_span();
    if (!span) throw DataError("build_chunks: empty corpus");

    // k equal-duration intervals covering [first, last]; the final boundary
    // sits one second past the last record so slices partition the corpus.
    const std::int64_t total = span->second.seconds - span->first.seconds + 1;
    std::vector<Corpus> chunks;
    chunks.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const UtcTime lo{span->first.seconds + total * i / k};
        const UtcTime hi{span->first.seconds + total * (i + 1) / k};
        Corpus chunk = slice_by_time(corpus, lo, hi);
        if (chunk.empty())
            throw DataError("build_chunks: chunk " + std::to_string(i) + " (" + format_time(lo) +
                            " .. " + format_time(hi) + ") is empty");
        chunks.push_back(std::move(chunk));
    }
    std::size_t smallest = chunks.front().size();
    for (const auto& c : chunks) smallest = std::min(smallest, c.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        chunks[i] = undersample_to_size(chunks[i], smallest,
                                        derive_seed(seed, {seed_tag::kChunkEqualize, i}));
    }
    return chunks;
}

DegradationMatrix run_degradation_matrix(std::span<const Corpus> chunks,
                                         const ExperimentParams& params, std::uint64_t seed) {
    if (chunks.size() < 2) throw DataError("run_degradation_matrix: need at least 2 chunks");
    const std::size_t k = chunks.size();
    DegradationMatrix out;
    out.chunk_size = chunks.front().size();
    for (const auto& c : chunks) {
        if (c.empty()) throw DataError("run_degradation_matrix: empty chunk");
        out.chunk_bounds.push_back(*c.time_span());
    }
    out.f1.assign(k, std::vector<double>(k, 0.0));

    for (std::size_t i = 0; i < k; ++i) {
        const auto cell = [&](std::size_t j, const char* what, auto&& fn) {
            try {
                return fn();
            } catch (const DataError& e) {
                throw DataError("degradation cell (" + std::to_string(i) + "," +
                                std::to_string(j) + ") " + what + ": " + e.what());
            }
        };
        // Off-diagonal row model: trained on the full equalized chunk i.
        const FittedArm full = cell(i, "train", [&] {
            return fit_arm(chunks[i], params, derive_seed(seed, {seed_tag::kTrainShuffle, i, i}));
        });
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            out.f1[i][j] = cell(j, "evaluate", [&] {
                return evaluate_on(full, chunks[j], params).rejected.f1;
            });
        }
        // Diagonal: 80/20 stratified holdout within the chunk.
        out.f1[i][i] = cell(i, "holdout", [&] {
            const auto [train_part, test_part] =
                holdout_split(chunks[i], 0.2, derive_seed(seed, {seed_tag::kHoldout, i}));
            const FittedArm held = fit_arm(
                train_part, params, derive_seed(seed, {seed_tag::kTrainShuffle, i, i, 1}));
            return evaluate_on(held, test_part, params).rejected.f1;
        });
    }
    return out;
}

SlidingWindowResult run_sliding_window(const Corpus& corpus, int window_months, int step_months,
                                       const ExperimentParams& params, std::uint64_t seed) {
    if (window_months < 1 || step_months < 1)
        throw DataError("run_sliding_window: window and step must be >= 1 month");
    const auto span = corpus.time_span();
    if (!span) throw DataError("run_sliding_window: empty corpus");
    const UtcTime anchor = month_floor(span->first);
    const int months_spanned = months_between(span->first, span->second) + 1;
    if (months_spanned < window_months + step_months)
        throw DataError("run_sliding_window: corpus spans " + std::to_string(months_spanned) +
                        " months, need window + step = " +
                        std::to_string(window_months + step_months));

    SlidingWindowResult out;
    for (std::size_t step = 0;; ++step) {
        const int offset = static_cast<int>(step) * step_months;
        const UtcTime train_start = add_months(anchor, offset);
        const UtcTime train_end = add_months(anchor, offset + window_months);
        const UtcTime eval_end = add_months(anchor, offset + window_months + step_months);
        if (train_end > span->second) break;

        const Corpus train_part = slice_by_time(corpus, train_start, train_end);
        const Corpus eval_part = slice_by_time(corpus, train_end, eval_end);
        const std::string period = format_time(train_start) + " .. " + format_time(eval_end);
        if (train_part.empty() || eval_part.empty()) {
            out.warnings.push_back("skipped step " + std::to_string(step) + " (" + period +
                                   "): empty " + (train_part.empty() ? "window" : "evaluation period"));
            continue;
        }
        try {
            const FittedArm arm =
                fit_arm(train_part, params, derive_seed(seed, {seed_tag::kWindow, step}));
            WindowPoint p;
            p.train_start = train_start;
            p.train_end = train_end;
            p.eval_end = eval_end;
            p.metrics = evaluate_on(arm, eval_part, params);
            out.points.push_back(p);
        } catch (const DataError& e) {
            out.warnings.push_back("skipped step " + std::to_string(step) + " (" + period +
                                   "): " + e.what());
        }
    }
    return out;
}

}  // namespace driftlab
