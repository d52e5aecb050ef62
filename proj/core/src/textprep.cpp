#include "driftlab/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "driftlab/errors.hpp"
#include "driftlab/hash.hpp"
#include "driftlab/stemmer.hpp"
#include "driftlab/unicode.hpp"

namespace driftlab {

namespace detail {
extern const char* kGermanStopwordsText;  // generated from data/stopwords_de.txt
}

std::uint64_t NormalizerConfig::content_hash() const {
    std::uint64_t h = kFnv64Offset;
    h = fnv1a64(lowercase ? "lc=1;" : "lc=0;", h);
    h = fnv1a64("stemmer=", h);
    h = fnv1a64(stemmer, h);
    h = fnv1a64(";minlen=", h);
    h = fnv1a64_u64(min_token_length, h);
    h = fnv1a64(";stopwords=", h);
    h = fnv1a64_u64(stopword_hash(stopwords), h);
    return h;
}

std::vector<std::string> normalize(std::string_view text, const NormalizerConfig& config) {
    const StemFn stem = make_stemmer(config.stemmer);
    std::vector<std::string> out;
    const auto cps = decode_utf8(text);

    std::vector<char32_t> token;
    const auto flush = [&] {
        if (token.size() >= config.min_token_length) {
            std::string surface = encode_utf8(token);
            if (!config.stopwords.contains(surface)) {
                out.push_back(stem(surface));
            }
        }
        token.clear();
    };
    for (char32_t c : cps) {
        if (is_letter(c)) {
            token.push_back(config.lowercase ? to_lower(c) : c);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::unordered_set<std::string> parse_stopword_list(std::string_view text) {
    std::unordered_set<std::string> out;
    std::string word;
    bool in_comment = false;
    const auto flush = [&] {
        if (!word.empty()) out.insert(word);
        word.clear();
    };
    for (char c : text) {
        if (c == '\n') {
            in_comment = false;
            flush();
        } else if (in_comment) {
            continue;
        } else if (c == '#') {
            in_comment = true;
            flush();
        } else if (c == ' ' || c == '\t' || c == '\r') {
            flush();
        } else {
            word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    flush();
    return out;
}

const std::unordered_set<std::string>& default_german_stopwords() {
    static const std::unordered_set<std::string> kList =
        parse_stopword_list(detail::kGermanStopwordsText);
    return kList;
}

std::uint64_t stopword_hash(const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string_view> sorted(stopwords.begin(), stopwords.end());
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t h = kFnv64Offset;
    for (const auto& w : sorted) {
        h = fnv1a64(w, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

std::vector<std::pair<std::string, std::uint64_t>> ngram_counts(
    const std::vector<std::string>& tokens, bool bigrams) {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    std::unordered_map<std::string, std::size_t> pos;
    const auto bump = [&](std::string term) {
        auto [it, inserted] = pos.try_emplace(std::move(term), out.size());
        if (inserted)
            out.emplace_back(it->first, 1);
        else
            ++out[it->second].second;
    };
    for (const auto& t : tokens) bump(t);
    if (bigrams) {
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            bump(tokens[i] + " " + tokens[i + 1]);
        }
    }
    return out;
}

std::optional<std::uint32_t> FeatureSpace::index_of(std::string_view term) const {
    const auto it = term_index_.find(std::string(term));
    if (it == term_index_.end()) return std::nullopt;
    return it->second;
}

void FeatureSpace::finalize_index_and_hash() {
    term_index_.clear();
    term_index_.reserve(terms_.size());
    for (std::uint32_t i = 0; i < terms_.size(); ++i) term_index_.emplace(terms_[i], i);

    std::uint64_t h = kFnv64Offset;
    h = fnv1a64_u64(config_hash_, h);
    h = fnv1a64_u64(n_docs_fit_, h);
    for (std::uint32_t i = 0; i < terms_.size(); ++i) {
        h = fnv1a64(terms_[i], h);
        h = fnv1a64_f64(idf_[i], h);
    }
    content_hash_ = h;
}

FeatureSpace build_feature_space(const Corpus& fit_corpus, const NormalizerConfig& config,
                                 const FeatureParams& params) {
    if (fit_corpus.empty()) throw DataError("build_feature_space: empty corpus");

    // std::map keeps term statistics in lexicographic order, which makes the
    // tie-break below deterministic without a second sort key pass.
    struct TermStat {
        std::uint64_t corpus_freq = 0;
        std::uint64_t doc_freq = 0;
    };
    std::map<std::string, TermStat> stats;
    for (const auto& rec : fit_corpus.records()) {
        const auto counts = ngram_counts(normalize(rec.text, config), params.bigrams);
        for (const auto& [term, count] : counts) {
            auto& s = stats[term];
            s.corpus_freq += count;
            s.doc_freq += 1;
        }
    }

    std::vector<std::pair<std::string_view, TermStat>> eligible;
    eligible.reserve(stats.size());
    for (const auto& [term, s] : stats) {
        if (s.corpus_freq >= params.min_corpus_freq) eligible.emplace_back(term, s);
    }
    if (eligible.empty()) throw DataError("empty feature space");

    // Most frequent first; lexicographic tie-break (stable over the ordered map).
    std::stable_sort(eligible.begin(), eligible.end(),
                     [](const auto& a, const auto& b) { return a.second.corpus_freq > b.second.corpus_freq; });
    if (eligible.size() > params.max_terms) eligible.resize(params.max_terms);

    FeatureSpace fs;
    fs.params_ = params;
    fs.config_hash_ = config.content_hash();
    fs.n_docs_fit_ = fit_corpus.size();
    fs.fit_record_ids_ = fit_corpus.ids();
    fs.terms_.reserve(eligible.size());
    fs.doc_freq_.reserve(eligible.size());
    fs.corpus_freq_.reserve(eligible.size());
    fs.idf_.reserve(eligible.size());
    const double n_docs = static_cast<double>(fs.n_docs_fit_);
    for (const auto& [term, s] : eligible) {
        fs.terms_.emplace_back(term);
        fs.doc_freq_.push_back(s.doc_freq);
        fs.corpus_freq_.push_back(s.corpus_freq);
        fs.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(s.doc_freq))) + 1.0);
    }
    fs.finalize_index_and_hash();
    return fs;
}

DocTermMatrix vectorize(const Corpus& corpus, const FeatureSpace& fs,
                        const NormalizerConfig& config) {
    if (config.content_hash() != fs.config_hash())
        throw DataError("vectorize: normalizer config does not match the feature space");

    DocTermMatrix m;
    m.n_cols = fs.size();
    m.feature_space_hash = fs.content_hash();
    m.rows.reserve(corpus.size());
    m.labels.reserve(corpus.size());
    m.doc_ids.reserve(corpus.size());

    for (const auto& rec : corpus.records()) {
        const auto counts = ngram_counts(normalize(rec.text, config), fs.params().bigrams);
        std::vector<SparseEntry> row;
        for (const auto& [term, count] : counts) {
            if (const auto col = fs.index_of(term)) {
                row.push_back({*col, static_cast<double>(count) * fs.idf(*col)});
            }
        }
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
        double norm_sq = 0.0;
        for (const auto& e : row) norm_sq += e.value * e.value;
        if (row.empty()) {
            ++m.n_empty_rows;
        } else {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& e : row) e.value *= inv;
        }
        m.rows.push_back(std::move(row));
        m.labels.push_back(rec.rejected);
        m.doc_ids.push_back(rec.id);
    }
    return m;
}

void FeatureSpace::save_json(std::ostream& out) const {
    nlohmann::ordered_json j;
    j["n_docs_fit"] = n_docs_fit_;
    j["config_hash"] = hex64(config_hash_);
    j["content_hash"] = hex64(content_hash_);
    j["params"] = {{"max_terms", params_.max_terms},
                   {"min_corpus_freq", params_.min_corpus_freq},
                   {"bigrams", params_.bigrams}};
    j["terms"] = terms_;
    j["doc_freq"] = doc_freq_;
    j["corpus_freq"] = corpus_freq_;
    j["idf"] = idf_;
    j["fit_record_ids"] = fit_record_ids_;
    out << j.dump(2) << '\n';
}

FeatureSpace FeatureSpace::load_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("feature space JSON: ") + e.what());
    }
    FeatureSpace fs;
    try {
        fs.n_docs_fit_ = j.at("n_docs_fit").get<std::size_t>();
        fs.config_hash_ = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
        fs.params_.max_terms = j.at("params").at("max_terms").get<std::size_t>();
        fs.params_.min_corpus_freq = j.at("params").at("min_corpus_freq").get<std::size_t>();
        fs.params_.bigrams = j.at("params").at("bigrams").get<bool>();
        fs.terms_ = j.at("terms").get<std::vector<std::string>>();
        fs.doc_freq_ = j.at("doc_freq").get<std::vector<std::uint64_t>>();
        fs.corpus_freq_ = j.at("corpus_freq").get<std::vector<std::uint64_t>>();
        fs.idf_ = j.at("idf").get<std::vector<double>>();
        fs.fit_record_ids_ = j.at("fit_record_ids").get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("feature space JSON: ") + e.what());
    }
    if (fs.doc_freq_.size() != fs.terms_.size() || fs.corpus_freq_.size() != fs.terms_.size() ||
        fs.idf_.size() != fs.terms_.size())
        throw DataError("feature space JSON: array lengths disagree");
    fs.finalize_index_and_hash();
    return fs;
}

}  // namespace driftlab
