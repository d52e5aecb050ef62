#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/model.hpp"
#include "driftlab/textprep.hpp"
#include "driftlab/time.hpp"

namespace driftlab {

// The two training arms plus the shared evaluation set. Invariants:
// |control| == |time_stratified|; both arms are id-disjoint from evaluation;
// time_stratified lies strictly before eval_start, evaluation at or after.
struct SplitDatasets {
    Corpus control;
    Corpus time_stratified;
    Corpus evaluation;
    UtcTime eval_start;
};

// Four-stage construction: split at eval_start; sample the control arm from
// the full corpus at the time-stratified arm's size; exclude control ids
// from the evaluation set. Requires a class-balanced corpus spanning both
// sides of eval_start.
SplitDatasets build_split_datasets(const Corpus& corpus, UtcTime eval_start, std::uint64_t seed);

struct ExperimentParams {
    NormalizerConfig normalizer;
    FeatureParams features;
    TrainHyperparams train;
};

struct DatasetComposition {
    std::size_t n = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::optional<UtcTime> start;
    std::optional<UtcTime> end;
};

DatasetComposition composition_of(const Corpus& corpus);

struct ArmResult {
    Metrics overall;                     // on the full evaluation corpus
    std::vector<Metrics> monthly;        // aligned with SplitReport::months
    std::uint64_t feature_space_hash = 0;
    std::size_t n_train = 0;
    std::vector<std::int64_t> fit_record_ids;  // ids the feature space was fit on
};

struct SplitReport {
    std::vector<std::string> months;  // evaluation months, ascending
    ArmResult control;
    ArmResult time_stratified;
    DatasetComposition control_stats;
    DatasetComposition time_stratified_stats;
    DatasetComposition evaluation_stats;
    // Fraction of control records with timestamp >= eval_start.
    double control_eval_period_fraction = 0.0;
    UtcTime eval_start;
};

// Per arm: fit the vocabulary on that arm only, train, evaluate on the full
// evaluation corpus overall and per month.
SplitReport run_split_experiment(const SplitDatasets& splits, const ExperimentParams& params,
                                 std::uint64_t seed);

// Partitions the time span into k equal-duration consecutive intervals and
// undersamples every chunk to the smallest chunk's size. Errors when any
// interval is empty.
std::vector<Corpus> build_chunks(const Corpus& corpus, int k, std::uint64_t seed);

struct DegradationMatrix {
    std::vector<std::pair<UtcTime, UtcTime>> chunk_bounds;
    // f1[i][j]: positive-class F1 of the model trained on chunk i, evaluated
    // on chunk j. Diagonal entries train on an 80% stratified split and
    // evaluate on the 20% holdout; off-diagonal entries train on the full
    // equalized chunk.
    std::vector<std::vector<double>> f1;
    std::size_t chunk_size = 0;
};

DegradationMatrix run_degradation_matrix(std::span<const Corpus> chunks,
                                         const ExperimentParams& params, std::uint64_t seed);

struct WindowPoint {
    UtcTime train_start;
    UtcTime train_end;  // == eval_start
    UtcTime eval_end;
    Metrics metrics;
};

struct SlidingWindowResult {
    std::vector<WindowPoint> points;
    std::vector<std::string> warnings;  // skipped steps
};

// Walks the corpus in step_months strides anchored at the month floor of the
// first record: train on the trailing window_months, evaluate on the next
// step_months. Steps with an empty side are skipped with a warning.
SlidingWindowResult run_sliding_window(const Corpus& corpus, int window_months, int step_months,
                                       const ExperimentParams& params, std::uint64_t seed);

}  // namespace driftlab
