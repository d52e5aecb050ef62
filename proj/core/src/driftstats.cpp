#include "driftlab/driftstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "driftlab/errors.hpp"

namespace driftlab {
namespace {

void assign_average_ranks(RankedWordList& list) {
    auto& e = list.entries;
    std::size_t i = 0;
    while (i < e.size()) {
        std::size_t j = i;
        while (j + 1 < e.size() && e[j + 1].score == e[i].score) ++j;
        const double avg = static_cast<double>(i + 1 + j + 1) / 2.0;
        for (std::size_t k = i; k <= j; ++k) e[k].rank = avg;
        i = j + 1;
    }
}

}  // namespace

RankedWordList tfidf_rank_list(const Corpus& corpus, const NormalizerConfig& config,
                               const RankListParams& params) {
    if (corpus.empty()) throw DataError("tfidf_rank_list: empty corpus");
    FeatureParams fp;
    fp.max_terms = params.max_terms;
    fp.min_corpus_freq = params.min_corpus_freq;
    fp.bigrams = !params.unigrams_only;
    const FeatureSpace fs = build_feature_space(corpus, config, fp);

    // Aggregate mass = sum over documents of raw count * idf, which for a
    // frozen idf is corpus_freq(t) * idf(t).
    RankedWordList list;
    list.entries.reserve(fs.size());
    for (std::uint32_t col = 0; col < fs.size(); ++col) {
        RankedEntry entry;
        entry.term = fs.terms()[col];
        entry.score = static_cast<double>(fs.corpus_freq(col)) * fs.idf(col);
        list.entries.push_back(std::move(entry));
    }
    std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
    if (params.top_k > 0 && list.entries.size() > params.top_k) list.entries.resize(params.top_k);
    assign_average_ranks(list);
    return list;
}

std::vector<double> average_ranks_desc(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = static_cast<double>(i + 1 + j + 1) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double rank_pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DataError("rank_pearson: length mismatch");
    if (a.size() < 2) throw DataError("rank_pearson: need at least 2 points");
    const double n = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) throw DataError("rank_pearson: zero variance");
    return cov / std::sqrt(var_a * var_b);
}

double spearman(const RankedWordList& a, const RankedWordList& b, RankAlignment alignment) {
    std::unordered_map<std::string_view, double> score_b;
    score_b.reserve(b.entries.size());
    for (const auto& e : b.entries) score_b.emplace(e.term, e.score);

    std::vector<double> va;
    std::vector<double> vb;
    std::size_t shared = 0;
    if (alignment == RankAlignment::Intersection) {
        for (const auto& e : a.entries) {
            const auto it = score_b.find(e.term);
            if (it == score_b.end()) continue;
            va.push_back(e.score);
            vb.push_back(it->second);
        }
        shared = va.size();
    } else {
        std::unordered_map<std::string_view, double> score_a;
        score_a.reserve(a.entries.size());
        for (const auto& e : a.entries) score_a.emplace(e.term, e.score);
        // Union vocabulary in deterministic order; absent terms scored below
        // every present term so they land at the maximal rank.
        std::map<std::string_view, std::pair<const double*, const double*>> joint;
        for (const auto& [term, s] : score_a) joint[term].first = &s;
        for (const auto& [term, s] : score_b) {
            joint[term].second = &s;
            if (score_a.contains(term)) ++shared;
        }
        double floor_a = 0.0;
        double floor_b = 0.0;
        for (const auto& e : a.entries) floor_a = std::min(floor_a, e.score);
        for (const auto& e : b.entries) floor_b = std::min(floor_b, e.score);
        floor_a -= 1.0;
        floor_b -= 1.0;
        for (const auto& [term, scores] : joint) {
            va.push_back(scores.first ? *scores.first : floor_a);
            vb.push_back(scores.second ? *scores.second : floor_b);
        }
    }
    if (shared < 2) throw DataError("spearman: insufficient overlap (< 2 shared terms)");

    const auto ranks_a = average_ranks_desc(va);
    const auto ranks_b = average_ranks_desc(vb);
    return rank_pearson(ranks_a, ranks_b);
}

CorrelationMatrix spearman_matrix(std::span<const Corpus> chunks, const NormalizerConfig& config,
                                  const RankListParams& params, RankAlignment alignment) {
    if (chunks.size() < 2) throw DataError("spearman_matrix: need at least 2 chunks");
    std::vector<RankedWordList> lists;
    lists.reserve(chunks.size());
    CorrelationMatrix out;
    for (const auto& c : chunks) {
        if (c.empty()) throw DataError("spearman_matrix: empty chunk");
        lists.push_back(tfidf_rank_list(c, config, params));
        out.chunk_bounds.push_back(*c.time_span());
    }
    const std::size_t k = chunks.size();
    out.rho.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double r = 0.0;
            try {
                r = spearman(lists[i], lists[j], alignment);
            } catch (const DataError& e) {
                throw DataError("spearman_matrix cell (" + std::to_string(i) + "," +
                                std::to_string(j) + "): " + e.what());
            }
            out.rho[i][j] = r;
            out.rho[j][i] = r;
        }
    }
    return out;
}

std::vector<EmergingInterval> emerging_words(const Corpus& corpus, UtcTime period_start,
                                             UtcTime period_end, const NormalizerConfig& config,
                                             std::size_t top_n, int group_months) {
    if (!(period_start < period_end)) throw DataError("emerging_words: empty period");
    if (group_months < 1) throw DataError("emerging_words: group_months must be >= 1");
    const auto span = corpus.time_span();
    if (!span || !(span->first < period_start))
        throw DataError("emerging_words: no data before period start");

    // First corpus occurrence per normalized unigram; records are in
    // ascending time order, so the first sighting wins.
    std::unordered_map<std::string, UtcTime> first_seen;
    std::vector<std::pair<UtcTime, std::vector<std::string>>> docs;
    docs.reserve(corpus.size());
    for (const auto& rec : corpus.records()) {
        auto tokens = normalize(rec.text, config);
        for (const auto& t : tokens) first_seen.try_emplace(t, rec.timestamp);
        if (rec.timestamp >= period_start && rec.timestamp < period_end)
            docs.emplace_back(rec.timestamp, std::move(tokens));
    }

    std::vector<EmergingInterval> out;
    for (UtcTime t = period_start; t < period_end; t = add_months(t, group_months)) {
        EmergingInterval interval;
        interval.start = t;
        interval.end = std::min(add_months(t, group_months), period_end);
        interval.label =
            month_label(interval.start) + ".." + month_label(interval.end.plus_seconds(-1));

        std::map<std::string_view, std::uint64_t> counts;  // ordered for tie-breaks
        for (const auto& [ts, tokens] : docs) {
            if (ts < interval.start || ts >= interval.end) continue;
            for (const auto& tok : tokens) {
                if (first_seen.at(tok) >= period_start) ++counts[tok];
            }
        }
        std::vector<std::pair<std::string_view, std::uint64_t>> ranked(counts.begin(),
                                                                       counts.end());
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        if (ranked.size() > top_n) ranked.resize(top_n);
        for (const auto& [term, count] : ranked) interval.words.emplace_back(std::string(term), count);
        out.push_back(std::move(interval));
    }
    return out;
}

}  // namespace driftlab
