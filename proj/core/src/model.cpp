#include "driftlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "driftlab/errors.hpp"
#include "driftlab/hash.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {
namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double dot_row(const std::vector<SparseEntry>& row, std::span<const double> w) {
    double z = 0.0;
    for (const auto& e : row) z += w[e.col] * e.value;
    return z;
}

void check_trainable(const DocTermMatrix& m) {
    if (m.rows.empty()) throw DataError("train: empty matrix");
    const bool has_pos = std::find(m.labels.begin(), m.labels.end(), 1) != m.labels.end();
    const bool has_neg = std::find(m.labels.begin(), m.labels.end(), 0) != m.labels.end();
    if (!has_pos || !has_neg) throw DataError("train: single-class input");
    for (const auto& row : m.rows) {
        for (const auto& e : row) {
            if (!std::isfinite(e.value)) throw DataError("train: non-finite feature value");
        }
    }
}

ClassMetrics class_metrics(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
    ClassMetrics c;
    c.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    c.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    c.f1 = c.precision + c.recall > 0 ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
                                      : 0.0;
    return c;
}

}  // namespace

double logistic_loss(const DocTermMatrix& matrix, std::span<const double> weights, double bias,
                     double l2_penalty) {
    double loss = 0.0;
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        const double z = dot_row(matrix.rows[i], weights) + bias;
        // y in {0,1}: loss_i = softplus(z) - y*z
        loss += softplus(z) - (matrix.labels[i] ? z : 0.0);
    }
    loss /= static_cast<double>(matrix.rows.size());
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * l2_penalty * reg;
}

void logistic_loss_gradient(const DocTermMatrix& matrix, std::span<const double> weights,
                            double bias, double l2_penalty, std::span<double> grad_weights,
                            double& grad_bias) {
    std::fill(grad_weights.begin(), grad_weights.end(), 0.0);
    grad_bias = 0.0;
    const double inv_n = 1.0 / static_cast<double>(matrix.rows.size());
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        const double g = (sigmoid(dot_row(matrix.rows[i], weights) + bias) -
                          static_cast<double>(matrix.labels[i])) *
                         inv_n;
        for (const auto& e : matrix.rows[i]) grad_weights[e.col] += g * e.value;
        grad_bias += g;
    }
    for (std::size_t c = 0; c < grad_weights.size(); ++c)
        grad_weights[c] += l2_penalty * weights[c];
}

TrainedModel train(const DocTermMatrix& matrix, const TrainHyperparams& hp) {
    check_trainable(matrix);
    if (hp.epochs == 0) throw DataError("train: epochs must be >= 1");
    if (!std::isfinite(hp.l2_penalty) || hp.l2_penalty < 0)
        throw DataError("train: l2_penalty must be finite and >= 0");
    if (!std::isfinite(hp.learning_rate) || hp.learning_rate <= 0)
        throw DataError("train: learning_rate must be finite and > 0");

    const std::size_t n = matrix.rows.size();
    const std::size_t d = matrix.n_cols;
    TrainedModel model;
    model.hyperparams = hp;
    model.feature_space_hash = matrix.feature_space_hash;
    model.weights.assign(d, 0.0);
    model.train_loss.reserve(hp.epochs);

    if (hp.full_batch) {
        std::vector<double> grad(d, 0.0);
        double grad_bias = 0.0;
        for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
            logistic_loss_gradient(matrix, model.weights, model.bias, hp.l2_penalty, grad,
                                   grad_bias);
            for (std::size_t c = 0; c < d; ++c) model.weights[c] -= hp.learning_rate * grad[c];
            model.bias -= hp.learning_rate * grad_bias;
            model.train_loss.push_back(
                logistic_loss(matrix, model.weights, model.bias, hp.l2_penalty));
        }
        return model;
    }

    // SGD with the scale trick: w = scale * v, so the L2 decay touches every
    // coordinate each step while updates stay O(nnz).
    std::vector<double> v(d, 0.0);
    double scale = 1.0;
    SplitMix64 rng(hp.shuffle_seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::uint64_t t = 0;
    for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t i : order) {
            ++t;
            const double eta = hp.learning_rate / std::sqrt(static_cast<double>(t));
            double z = model.bias;
            for (const auto& e : matrix.rows[i]) z += scale * v[e.col] * e.value;
            const double g = sigmoid(z) - static_cast<double>(matrix.labels[i]);
            scale *= 1.0 - eta * hp.l2_penalty;
            if (scale < 1e-9) {  // re-absorb to keep v well-scaled
                for (auto& w : v) w *= scale;
                scale = 1.0;
            }
            const double step = eta * g / scale;
            for (const auto& e : matrix.rows[i]) v[e.col] -= step * e.value;
            model.bias -= eta * g;
        }
        std::vector<double> w(d);
        for (std::size_t c = 0; c < d; ++c) w[c] = scale * v[c];
        model.train_loss.push_back(logistic_loss(matrix, w, model.bias, hp.l2_penalty));
        if (epoch + 1 == hp.epochs) model.weights = std::move(w);
    }
    return model;
}

Predictions predict(const TrainedModel& model, const DocTermMatrix& matrix) {
    if (model.feature_space_hash != matrix.feature_space_hash)
        throw DataError("predict: matrix was built from a different feature space");
    if (model.weights.size() != matrix.n_cols)
        throw DataError("predict: feature count mismatch");
    Predictions p;
    p.scores.reserve(matrix.rows.size());
    p.labels.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        const double s = sigmoid(dot_row(row, model.weights) + model.bias);
        p.scores.push_back(s);
        p.labels.push_back(s >= 0.5 ? 1 : 0);
    }
    return p;
}

Metrics evaluate(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> truth) {
    if (predicted.size() != truth.size()) throw DataError("evaluate: length mismatch");
    if (predicted.empty()) throw DataError("evaluate: empty input");
    Metrics m;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0;
        const bool y = truth[i] != 0;
        if (p && y)
            ++m.tp;
        else if (p && !y)
            ++m.fp;
        else if (!p && y)
            ++m.fn;
        else
            ++m.tn;
    }
    m.rejected = class_metrics(m.tp, m.fp, m.fn);
    // For the accepted class, "positive" means label 0.
    m.accepted = class_metrics(m.tn, m.fn, m.fp);
    m.macro.precision = 0.5 * (m.rejected.precision + m.accepted.precision);
    m.macro.recall = 0.5 * (m.rejected.recall + m.accepted.recall);
    m.macro.f1 = 0.5 * (m.rejected.f1 + m.accepted.f1);
    m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
    return m;
}

std::pair<Corpus, Corpus> holdout_split(const Corpus& corpus, double eval_fraction,
                                        std::uint64_t seed) {
    if (!(eval_fraction > 0.0 && eval_fraction < 1.0))
        throw DataError("holdout_split: eval_fraction must be in (0, 1)");
    if (corpus.size() < 2) throw DataError("holdout_split: need at least 2 records");

    const std::size_t n = corpus.size();
    const auto test_total = static_cast<std::size_t>(
        std::llround(eval_fraction * static_cast<double>(n)));
    if (test_total == 0 || test_total == n)
        throw DataError("holdout_split: split would leave an empty side");

    // Largest-remainder apportionment of the test quota across the classes.
    const std::size_t n_rej = corpus.rejected_count();
    const std::size_t n_acc = corpus.accepted_count();
    const double exact_rej = eval_fraction * static_cast<double>(n_rej);
    std::size_t quota_rej = static_cast<std::size_t>(exact_rej);
    std::size_t quota_acc = static_cast<std::size_t>(eval_fraction * static_cast<double>(n_acc));
    while (quota_rej + quota_acc < test_total) {
        const double rem_rej =
            quota_rej < n_rej ? exact_rej - static_cast<double>(quota_rej) : -1.0;
        const double rem_acc = quota_acc < n_acc
                                   ? eval_fraction * static_cast<double>(n_acc) -
                                         static_cast<double>(quota_acc)
                                   : -1.0;
        if (rem_rej >= rem_acc)
            ++quota_rej;
        else
            ++quota_acc;
    }
    std::vector<std::size_t> rej_pos;
    std::vector<std::size_t> acc_pos;
    for (std::size_t i = 0; i < n; ++i) {
        (corpus.records()[i].rejected ? rej_pos : acc_pos).push_back(i);
    }
    SplitMix64 rng(seed);
    std::vector<bool> in_test(n, false);
    for (std::size_t i : sample_indices(rej_pos.size(), quota_rej, rng)) in_test[rej_pos[i]] = true;
    for (std::size_t i : sample_indices(acc_pos.size(), quota_acc, rng)) in_test[acc_pos[i]] = true;

    std::vector<CommentRecord> train_recs;
    std::vector<CommentRecord> test_recs;
    train_recs.reserve(n - test_total);
    test_recs.reserve(test_total);
    for (std::size_t i = 0; i < n; ++i) {
        (in_test[i] ? test_recs : train_recs).push_back(corpus.records()[i]);
    }
    return {Corpus::from_records(std::move(train_recs)), Corpus::from_records(std::move(test_recs))};
}

void TrainedModel::save_json(std::ostream& out) const {
    nlohmann::ordered_json j;
    j["feature_space_hash"] = hex64(feature_space_hash);
    j["hyperparams"] = {{"l2_penalty", hyperparams.l2_penalty},
                        {"epochs", hyperparams.epochs},
                        {"learning_rate", hyperparams.learning_rate},
                        {"shuffle_seed", hyperparams.shuffle_seed},
                        {"full_batch", hyperparams.full_batch}};
    j["bias"] = bias;
    j["weights"] = weights;
    j["train_loss"] = train_loss;
    out << j.dump(2) << '\n';
}

TrainedModel TrainedModel::load_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
        TrainedModel m;
        m.feature_space_hash = std::stoull(j.at("feature_space_hash").get<std::string>(), nullptr, 16);
        const auto& hp = j.at("hyperparams");
        m.hyperparams.l2_penalty = hp.at("l2_penalty").get<double>();
        m.hyperparams.epochs = hp.at("epochs").get<std::size_t>();
        m.hyperparams.learning_rate = hp.at("learning_rate").get<double>();
        m.hyperparams.shuffle_seed = hp.at("shuffle_seed").get<std::uint64_t>();
        m.hyperparams.full_batch = hp.at("full_batch").get<bool>();
        m.bias = j.at("bias").get<double>();
        m.weights = j.at("weights").get<std::vector<double>>();
        m.train_loss = j.at("train_loss").get<std::vector<double>>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model JSON: ") + e.what());
    }
}

}  // namespace driftlab
