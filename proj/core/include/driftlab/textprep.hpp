#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "driftlab/corpus.hpp"

namespace driftlab {

// Text normalization: lowercase, tokenize (alphabetic runs of a minimum
// length), drop stopwords, stem. Identical config + text always yields the
// identical token sequence.
struct NormalizerConfig {
    bool lowercase = true;
    std::unordered_set<std::string> stopwords;  // surface forms, matched after lowercasing
    std::string stemmer = "german";
    std::size_t min_token_length = 2;

    // Stable fingerprint over all fields (stopwords hashed in sorted order).
    std::uint64_t content_hash() const;
};

std::vector<std::string> normalize(std::string_view text, const NormalizerConfig& config);

// The stopword list shipped with the project (data/stopwords_de.txt).
const std::unordered_set<std::string>& default_german_stopwords();
// Canonical hash of a stopword set: FNV-1a over the sorted, newline-joined
// entries. Recorded in run manifests.
std::uint64_t stopword_hash(const std::unordered_set<std::string>& stopwords);
// Parses one stopword per whitespace-separated token; '#' starts a comment.
std::unordered_set<std::string> parse_stopword_list(std::string_view text);

struct FeatureParams {
    std::size_t max_terms = 3000;
    std::size_t min_corpus_freq = 5;
    bool bigrams = true;  // unigrams + bigrams when true, unigrams only otherwise
};

// Frozen vocabulary with document frequencies and smoothed idf weights:
// idf(t) = ln((1 + n_docs) / (1 + doc_freq(t))) + 1.
class FeatureSpace {
public:
    const std::vector<std::string>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    std::optional<std::uint32_t> index_of(std::string_view term) const;

    std::uint64_t doc_freq(std::uint32_t col) const { return doc_freq_[col]; }
    std::uint64_t corpus_freq(std::uint32_t col) const { return corpus_freq_[col]; }
    double idf(std::uint32_t col) const { return idf_[col]; }
    std::size_t n_docs_fit() const { return n_docs_fit_; }
    const FeatureParams& params() const { return params_; }

    std::uint64_t config_hash() const { return config_hash_; }
    // Fingerprint of terms + idf + config; binds models and matrices to this
    // exact featurization.
    std::uint64_t content_hash() const { return content_hash_; }

    // Ids of the records the vocabulary was fitted on (leak audits).
    const std::vector<std::int64_t>& fit_record_ids() const { return fit_record_ids_; }

    void save_json(std::ostream& out) const;
    static FeatureSpace load_json(std::istream& in);

    friend FeatureSpace build_feature_space(const Corpus&, const NormalizerConfig&,
                                            const FeatureParams&);

private:
    void finalize_index_and_hash();

    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::uint32_t> term_index_;
    std::vector<std::uint64_t> doc_freq_;
    std::vector<std::uint64_t> corpus_freq_;
    std::vector<double> idf_;
    std::size_t n_docs_fit_ = 0;
    FeatureParams params_;
    std::uint64_t config_hash_ = 0;
    std::uint64_t content_hash_ = 0;
    std::vector<std::int64_t> fit_record_ids_;
};

// Extracts n-grams from normalized tokens, drops terms with total corpus
// frequency below min_corpus_freq, keeps the max_terms most frequent
// (ties broken lexicographically), and computes doc_freq/idf.
FeatureSpace build_feature_space(const Corpus& fit_corpus, const NormalizerConfig& config,
                                 const FeatureParams& params = {});

struct SparseEntry {
    std::uint32_t col = 0;
    double value = 0.0;
};

// L2-normalized tf-idf rows; empty rows (no in-vocabulary token) stay zero
// and are counted in n_empty_rows.
struct DocTermMatrix {
    std::vector<std::vector<SparseEntry>> rows;
    std::vector<std::uint8_t> labels;
    std::vector<std::int64_t> doc_ids;
    std::size_t n_cols = 0;
    std::uint64_t feature_space_hash = 0;
    std::size_t n_empty_rows = 0;

    double coverage() const {
        return rows.empty() ? 1.0
                            : 1.0 - static_cast<double>(n_empty_rows) /
                                        static_cast<double>(rows.size());
    }
};

// Requires `config` to hash-match the config the feature space was built with.
DocTermMatrix vectorize(const Corpus& corpus, const FeatureSpace& fs,
                        const NormalizerConfig& config);

// Unigram+bigram occurrence counts of one token sequence, in vocabulary order
// of first use. Bigrams join adjacent normalized tokens with a single space.
std::vector<std::pair<std::string, std::uint64_t>> ngram_counts(
    const std::vector<std::string>& tokens, bool bigrams);

}  // namespace driftlab
