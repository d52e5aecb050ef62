#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/textprep.hpp"

namespace driftlab {

struct TrainHyperparams {
    double l2_penalty = 1e-4;
    std::size_t epochs = 30;
    double learning_rate = 0.1;  // step size; SGD decays it as lr / sqrt(t)
    std::uint64_t shuffle_seed = 0;
    // Plain batch gradient descent with a constant step instead of SGD.
    bool full_batch = false;
};

// L2-regularized logistic regression; "rejected" (label 1) is the positive
// class throughout.
struct TrainedModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::uint64_t feature_space_hash = 0;
    TrainHyperparams hyperparams;
    std::vector<double> train_loss;  // objective after each epoch

    void save_json(std::ostream& out) const;
    static TrainedModel load_json(std::istream& in);
};

// Mean logistic loss plus (l2/2)*||w||^2; the bias is not regularized.
double logistic_loss(const DocTermMatrix& matrix, std::span<const double> weights, double bias,
                     double l2_penalty);
// Analytic gradient of logistic_loss; grad_weights must have matrix.n_cols entries.
void logistic_loss_gradient(const DocTermMatrix& matrix, std::span<const double> weights,
                            double bias, double l2_penalty, std::span<double> grad_weights,
                            double& grad_bias);

// Deterministic for fixed inputs; requires both classes present and finite
// feature values.
TrainedModel train(const DocTermMatrix& matrix, const TrainHyperparams& hp);

struct Predictions {
    std::vector<double> scores;        // sigmoid(w.x + b)
    std::vector<std::uint8_t> labels;  // score >= 0.5 -> 1
};

Predictions predict(const TrainedModel& model, const DocTermMatrix& matrix);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Confusion counts with label 1 (rejected) as positive. Precision/recall
// with a zero denominator are defined as 0.
struct Metrics {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    ClassMetrics rejected;  // positive class
    ClassMetrics accepted;
    ClassMetrics macro;
    double accuracy = 0.0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

Metrics evaluate(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> truth);

// Stratified random split; |test| = round(eval_fraction * |corpus|), class
// ratios preserved within rounding (largest-remainder apportionment).
std::pair<Corpus, Corpus> holdout_split(const Corpus& corpus, double eval_fraction,
                                        std::uint64_t seed);

}  // namespace driftlab
