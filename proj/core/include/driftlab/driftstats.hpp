#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/textprep.hpp"
#include "driftlab/time.hpp"

namespace driftlab {

struct RankedEntry {
    std::string term;
    double score = 0.0;  // aggregate un-normalized tf*idf mass
    double rank = 0.0;   // 1 = highest score; ties carry average ranks
};

// Entries sorted by score descending (ties lexicographic).
struct RankedWordList {
    std::vector<RankedEntry> entries;
};

struct RankListParams {
    bool unigrams_only = true;
    std::size_t max_terms = 3000;
    std::size_t min_corpus_freq = 5;
    std::size_t top_k = 0;  // 0 = keep all surviving terms
};

// Builds a feature space on this corpus alone and ranks terms by their
// summed tf*idf mass over documents.
RankedWordList tfidf_rank_list(const Corpus& corpus, const NormalizerConfig& config,
                               const RankListParams& params = {});

enum class RankAlignment {
    Intersection,   // restrict to the shared vocabulary, re-rank within it
    UnionMaxRank,   // union vocabulary; terms absent from a list tie at the worst ranks
};

// Tie-robust Spearman: Pearson correlation of the aligned rank vectors.
// Requires a shared vocabulary of at least 2 terms.
double spearman(const RankedWordList& a, const RankedWordList& b,
                RankAlignment alignment = RankAlignment::Intersection);

struct CorrelationMatrix {
    std::vector<std::pair<UtcTime, UtcTime>> chunk_bounds;
    std::vector<std::vector<double>> rho;  // symmetric, unit diagonal
};

CorrelationMatrix spearman_matrix(std::span<const Corpus> chunks, const NormalizerConfig& config,
                                  const RankListParams& params = {},
                                  RankAlignment alignment = RankAlignment::Intersection);

// Pearson correlation of two equal-length vectors (exposed for rank vectors
// and for oracle checks). Errors when either vector has zero variance.
double rank_pearson(std::span<const double> a, std::span<const double> b);

// Average ranks (1 = largest value) with tied values sharing the mean of
// their positions.
std::vector<double> average_ranks_desc(std::span<const double> values);

struct EmergingInterval {
    UtcTime start;
    UtcTime end;
    std::string label;  // first..last included month, e.g. "2020-03..2020-04"
    std::vector<std::pair<std::string, std::uint64_t>> words;  // (term, in-interval count)
};

// Terms (normalized unigrams) whose first corpus occurrence falls at or
// after period_start, listed per group_months-sized interval of the period
// and ranked by within-interval occurrence count. Requires data before
// period_start.
std::vector<EmergingInterval> emerging_words(const Corpus& corpus, UtcTime period_start,
                                             UtcTime period_end, const NormalizerConfig& config,
                                             std::size_t top_n = 20, int group_months = 2);

}  // namespace driftlab
