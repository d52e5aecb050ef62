#pragma once

// Independent reference implementations used to pin expected values. These
// deliberately share no code with the library paths they check: dense arrays,
// naive loops, textbook formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/model.hpp"
#include "driftlab/textprep.hpp"

namespace oracle {

struct DenseTfidf {
    std::vector<std::string> terms;               // column order
    std::vector<std::vector<double>> rows;        // dense, L2-normalized
};

// Dense brute-force tf-idf over an explicit vocabulary: raw counts times
// ln((1+N)/(1+df))+1, then row L2 normalization.
inline DenseTfidf dense_tfidf(const std::vector<std::vector<std::string>>& token_docs,
                              const std::vector<std::string>& vocabulary, bool bigrams) {
    DenseTfidf out;
    out.terms = vocabulary;
    const std::size_t n_docs = token_docs.size();
    const std::size_t n_terms = vocabulary.size();

    std::vector<std::vector<double>> counts(n_docs, std::vector<double>(n_terms, 0.0));
    for (std::size_t d = 0; d < n_docs; ++d) {
        std::vector<std::string> grams = token_docs[d];
        if (bigrams) {
            for (std::size_t i = 0; i + 1 < token_docs[d].size(); ++i)
                grams.push_back(token_docs[d][i] + " " + token_docs[d][i + 1]);
        }
        for (const auto& g : grams) {
            for (std::size_t t = 0; t < n_terms; ++t) {
                if (vocabulary[t] == g) counts[d][t] += 1.0;
            }
        }
    }
    std::vector<double> idf(n_terms, 0.0);
    for (std::size_t t = 0; t < n_terms; ++t) {
        double df = 0.0;
        for (std::size_t d = 0; d < n_docs; ++d) df += counts[d][t] > 0.0 ? 1.0 : 0.0;
        idf[t] = std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + df)) + 1.0;
    }
    out.rows.assign(n_docs, std::vector<double>(n_terms, 0.0));
    for (std::size_t d = 0; d < n_docs; ++d) {
        double norm_sq = 0.0;
        for (std::size_t t = 0; t < n_terms; ++t) {
            out.rows[d][t] = counts[d][t] * idf[t];
            norm_sq += out.rows[d][t] * out.rows[d][t];
        }
        if (norm_sq > 0.0) {
            for (std::size_t t = 0; t < n_terms; ++t) out.rows[d][t] /= std::sqrt(norm_sq);
        }
    }
    return out;
}

// Average ranks (1 = largest) by explicit position averaging.
inline std::vector<double> ranks_desc(const std::vector<double>& values) {
    std::vector<double> ranks(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double greater = 0.0;
        double equal = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] > values[i]) greater += 1.0;
            if (values[j] == values[i]) equal += 1.0;
        }
        // positions greater+1 .. greater+equal share the average rank
        ranks[i] = greater + (equal + 1.0) / 2.0;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
    }
    const double ma = sa / n;
    const double mb = sb / n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// Spearman over two (term -> score) maps: intersect, re-rank, rank-Pearson.
inline double spearman_maps(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b) {
    std::vector<double> va;
    std::vector<double> vb;
    for (const auto& [term, score] : a) {
        const auto it = b.find(term);
        if (it == b.end()) continue;
        va.push_back(score);
        vb.push_back(it->second);
    }
    return pearson(ranks_desc(va), ranks_desc(vb));
}

struct TalliedMetrics {
    double precision_pos = 0.0, recall_pos = 0.0, f1_pos = 0.0;
    double precision_neg = 0.0, recall_neg = 0.0, f1_neg = 0.0;
    double macro_f1 = 0.0, accuracy = 0.0;
};

// Per-example tally with from-the-definition formulas.
inline TalliedMetrics tally_metrics(const std::vector<std::uint8_t>& predicted,
                                    const std::vector<std::uint8_t>& truth) {
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == 1 && truth[i] == 1) tp += 1;
        if (predicted[i] == 1 && truth[i] == 0) fp += 1;
        if (predicted[i] == 0 && truth[i] == 1) fn += 1;
        if (predicted[i] == 0 && truth[i] == 0) tn += 1;
    }
    TalliedMetrics m;
    m.precision_pos = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    m.recall_pos = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    m.f1_pos = m.precision_pos + m.recall_pos > 0
                   ? 2 * m.precision_pos * m.recall_pos / (m.precision_pos + m.recall_pos)
                   : 0.0;
    m.precision_neg = tn + fn > 0 ? tn / (tn + fn) : 0.0;
    m.recall_neg = tn + fp > 0 ? tn / (tn + fp) : 0.0;
    m.f1_neg = m.precision_neg + m.recall_neg > 0
                   ? 2 * m.precision_neg * m.recall_neg / (m.precision_neg + m.recall_neg)
                   : 0.0;
    m.macro_f1 = 0.5 * (m.f1_pos + m.f1_neg);
    m.accuracy = (tp + tn) / (tp + fp + fn + tn);
    return m;
}

// Central finite differences of the regularized logistic loss.
inline void finite_difference_gradient(const driftlab::DocTermMatrix& matrix,
                                       std::vector<double> weights, double bias, double l2,
                                       std::vector<double>& grad_w, double& grad_b,
                                       double eps = 1e-6) {
    grad_w.assign(weights.size(), 0.0);
    for (std::size_t c = 0; c < weights.size(); ++c) {
        const double orig = weights[c];
        weights[c] = orig + eps;
        const double hi = driftlab::logistic_loss(matrix, weights, bias, l2);
        weights[c] = orig - eps;
        const double lo = driftlab::logistic_loss(matrix, weights, bias, l2);
        weights[c] = orig;
        grad_w[c] = (hi - lo) / (2.0 * eps);
    }
    const double hi = driftlab::logistic_loss(matrix, weights, bias + eps, l2);
    const double lo = driftlab::logistic_loss(matrix, weights, bias - eps, l2);
    grad_b = (hi - lo) / (2.0 * eps);
}

}  // namespace oracle
