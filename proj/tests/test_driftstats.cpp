#include <doctest.h>

#include <cmath>
#include <map>

#include "driftlab/driftstats.hpp"
#include "driftlab/errors.hpp"
#include "support/oracles.hpp"
#include "support/testgen.hpp"

using namespace driftlab;

namespace {

Corpus corpus_from_texts(const std::vector<std::string>& texts,
                         const std::vector<const char*>& times = {}) {
    std::vector<CommentRecord> records;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        CommentRecord r;
        r.id = static_cast<std::int64_t>(i) + 1;
        r.timestamp = times.empty() ? UtcTime{static_cast<std::int64_t>(i) * 86400}
                                    : *parse_time(times[i]);
        r.text = texts[i];
        r.rejected = i % 2;
        records.push_back(std::move(r));
    }
    return Corpus::from_records(std::move(records));
}

NormalizerConfig plain_config() {
    NormalizerConfig config;
    config.stemmer = "none";
    return config;
}

RankListParams unfiltered() {
    RankListParams p;
    p.min_corpus_freq = 1;
    return p;
}

RankedWordList list_from_scores(const std::vector<std::pair<std::string, double>>& scores) {
    RankedWordList list;
    for (const auto& [term, score] : scores) list.entries.push_back({term, score, 0.0});
    return list;
}

}  // namespace

TEST_CASE("tfidf_rank_list: frequency ordering with a shared idf") {
    const Corpus corpus = corpus_from_texts({"aa aa bb"});
    const auto list = tfidf_rank_list(corpus, plain_config(), unfiltered());
    REQUIRE(list.entries.size() == 2);
    CHECK(list.entries[0].term == "aa");
    CHECK(list.entries[0].score > list.entries[1].score);
    CHECK(list.entries[0].rank == doctest::Approx(1.0));
    CHECK(list.entries[1].rank == doctest::Approx(2.0));
}

TEST_CASE("tfidf_rank_list: tied aggregate scores share the average rank") {
    const Corpus corpus = corpus_from_texts({"aa bb"});
    const auto list = tfidf_rank_list(corpus, plain_config(), unfiltered());
    REQUIRE(list.entries.size() == 2);
    CHECK(list.entries[0].rank == doctest::Approx(1.5));
    CHECK(list.entries[1].rank == doctest::Approx(1.5));
}

TEST_CASE("tfidf_rank_list matches a brute-force aggregation") {
    const std::vector<std::string> texts = {
        "rot rot blau gelb",
        "blau gelb gelb lila",
        "rot lila lila gruen gruen",
    };
    const Corpus corpus = corpus_from_texts(texts);
    const auto list = tfidf_rank_list(corpus, plain_config(), unfiltered());

    // Independent aggregation: counts and document frequencies by hand.
    std::map<std::string, double> corpus_freq;
    std::map<std::string, double> doc_freq;
    for (const auto& text : texts) {
        std::map<std::string, double> local;
        for (const auto& tok : normalize(text, plain_config())) local[tok] += 1.0;
        for (const auto& [term, count] : local) {
            corpus_freq[term] += count;
            doc_freq[term] += 1.0;
        }
    }
    std::map<std::string, double> expected_score;
    for (const auto& [term, freq] : corpus_freq) {
        expected_score[term] =
            freq * (std::log((1.0 + 3.0) / (1.0 + doc_freq[term])) + 1.0);
    }
    std::vector<double> want_scores;
    for (const auto& e : list.entries) {
        want_scores.push_back(expected_score.at(e.term));
        CHECK(e.score == doctest::Approx(expected_score.at(e.term)).epsilon(1e-12));
    }
    const auto want_ranks = oracle::ranks_desc(want_scores);
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        CHECK(list.entries[i].rank == doctest::Approx(want_ranks[i]).epsilon(1e-12));
    }
}

TEST_CASE("spearman: identity, antisymmetry, symmetry") {
    const auto a = list_from_scores({{"aa", 5.0}, {"bb", 4.0}, {"cc", 3.0}, {"dd", 2.0}});
    CHECK(spearman(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    const auto reversed = list_from_scores({{"aa", 2.0}, {"bb", 3.0}, {"cc", 4.0}, {"dd", 5.0}});
    CHECK(spearman(a, reversed) == doctest::Approx(-1.0).epsilon(1e-12));

    const auto b = list_from_scores({{"aa", 1.0}, {"bb", 9.0}, {"cc", 2.0}, {"dd", 7.0}});
    CHECK(spearman(a, b) == doctest::Approx(spearman(b, a)).epsilon(1e-12));
}

TEST_CASE("spearman: six terms with one tie, hand-computed rank-Pearson") {
    const auto a = list_from_scores(
        {{"ta", 10.0}, {"tb", 8.0}, {"tc", 8.0}, {"td", 6.0}, {"te", 4.0}, {"tf", 2.0}});
    const auto b = list_from_scores(
        {{"ta", 9.0}, {"tb", 7.0}, {"tc", 5.0}, {"td", 6.0}, {"te", 8.0}, {"tf", 1.0}});
    // Ranks: a -> (1, 2.5, 2.5, 4, 5, 6), b -> (1, 3, 5, 4, 2, 6).
    // cov = 9.5, var_a = 17, var_b = 17.5.
    const double expected = 9.5 / std::sqrt(17.0 * 17.5);
    CHECK(spearman(a, b) == doctest::Approx(expected).epsilon(1e-12));
    // The tie-free closed form 1 - 6*sum(d^2)/(n(n^2-1)) gives 0.557...; the
    // tie-robust value differs.
    CHECK(std::abs(spearman(a, b) - (1.0 - 6.0 * 15.5 / (6.0 * 35.0))) > 1e-3);
}

TEST_CASE("spearman: restriction to the shared vocabulary") {
    const auto a = list_from_scores({{"aa", 5.0}, {"bb", 4.0}, {"cc", 3.0}, {"onlya", 99.0}});
    const auto b = list_from_scores({{"aa", 50.0}, {"bb", 40.0}, {"cc", 30.0}, {"onlyb", 1.0}});
    CHECK(spearman(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spearman: monotone transform invariance") {
    const auto a = list_from_scores({{"aa", 5.0}, {"bb", 4.0}, {"cc", 3.0}, {"dd", 1.0}});
    const auto b = list_from_scores({{"aa", 2.0}, {"bb", 6.0}, {"cc", 1.0}, {"dd", 4.0}});
    const auto scaled = list_from_scores({{"aa", 15.0}, {"bb", 12.0}, {"cc", 9.0}, {"dd", 3.0}});
    CHECK(spearman(a, b) == doctest::Approx(spearman(scaled, b)).epsilon(1e-12));
}

TEST_CASE("spearman: insufficient overlap and zero variance errors") {
    const auto a = list_from_scores({{"aa", 1.0}, {"bb", 2.0}});
    const auto b = list_from_scores({{"cc", 1.0}, {"dd", 2.0}});
    CHECK_THROWS_WITH_AS(spearman(a, b), doctest::Contains("insufficient overlap"), DataError);

    const auto tied = list_from_scores({{"aa", 1.0}, {"bb", 1.0}});
    const auto varied = list_from_scores({{"aa", 1.0}, {"bb", 2.0}});
    CHECK_THROWS_WITH_AS(spearman(tied, varied), doctest::Contains("zero"), DataError);
}

TEST_CASE("spearman: union alignment ranks absent terms worst") {
    // "dd" is missing from a; under the union it takes a's worst rank while
    // ranking second in b. Hand-computed rank vectors: a = (1,2,3,4) over
    // (aa,bb,cc,dd), b = (1,3,4,2), so rho = 2/5.
    const auto a = list_from_scores({{"aa", 5.0}, {"bb", 4.0}, {"cc", 3.0}});
    const auto b = list_from_scores({{"aa", 5.0}, {"dd", 4.0}, {"bb", 3.0}, {"cc", 2.0}});
    CHECK(spearman(a, b, RankAlignment::Intersection) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spearman(a, b, RankAlignment::UnionMaxRank) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("spearman matches the independent oracle on random rank lists") {
    SplitMix64 rng(777);
    for (int round = 0; round < 30; ++round) {
        std::map<std::string, double> scores_a;
        std::map<std::string, double> scores_b;
        const auto vocab = testgen::small_vocabulary(8 + rng.bounded(20));
        RankedWordList a;
        RankedWordList b;
        for (const auto& w : vocab) {
            if (rng.next_double() < 0.8) {
                const double s = 1.0 + std::floor(rng.next_double() * 8.0);
                scores_a[w] = s;
                a.entries.push_back({w, s, 0.0});
            }
            if (rng.next_double() < 0.8) {
                const double s = 1.0 + std::floor(rng.next_double() * 8.0);
                scores_b[w] = s;
                b.entries.push_back({w, s, 0.0});
            }
        }
        std::size_t shared = 0;
        for (const auto& [term, s] : scores_a) shared += scores_b.count(term);
        if (shared < 2) continue;
        double got = 0.0;
        try {
            got = spearman(a, b);
        } catch (const DataError&) {
            continue;  // zero rank variance draw
        }
        CHECK(got == doctest::Approx(oracle::spearman_maps(scores_a, scores_b)).epsilon(1e-12));
    }
}

TEST_CASE("spearman_matrix: identical chunks give the all-ones matrix") {
    const Corpus chunk = corpus_from_texts({"aa aa bb cc", "bb cc dd", "aa dd dd ee"});
    const std::vector<Corpus> chunks = {chunk, chunk, chunk};
    const auto matrix = spearman_matrix(chunks, plain_config(), unfiltered());
    REQUIRE(matrix.rho.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(matrix.rho[i][j] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("emerging_words: definition-forced listings") {
    // Months Jan..Jun 2020; the examined period covers Mar..Jun.
    const Corpus corpus = corpus_from_texts(
        {
            "alt bekannt alt",            // Jan
            "alt bekannt frueh",          // Feb ("frueh" is pre-period)
            "neu neu neu alt",            // Mar: "neu" emerges
            "neu neu neu neu frueh alt",  // Apr
            "spaet spaet bekannt",        // May: "spaet" emerges in interval 2
            "spaet neu",                  // Jun
        },
        {"2020-01-10", "2020-02-10", "2020-03-05", "2020-04-20", "2020-05-15", "2020-06-15"});
    const auto intervals =
        emerging_words(corpus, *parse_time("2020-03-01"), *parse_time("2020-07-01"),
                       plain_config(), 20, 2);
    REQUIRE(intervals.size() == 2);
    CHECK(intervals[0].label == "2020-03..2020-04");
    CHECK(intervals[1].label == "2020-05..2020-06");

    REQUIRE(intervals[0].words.size() == 1);
    CHECK(intervals[0].words[0].first == "neu");
    CHECK(intervals[0].words[0].second == 7);
    REQUIRE(intervals[1].words.size() == 2);
    CHECK(intervals[1].words[0].first == "spaet");
    CHECK(intervals[1].words[0].second == 3);
    CHECK(intervals[1].words[1].first == "neu");
    CHECK(intervals[1].words[1].second == 1);
}

TEST_CASE("emerging_words: a single pre-period occurrence excludes a term") {
    const Corpus corpus = corpus_from_texts(
        {"wort", "wort wort wort wort wort wort wort"}, {"2020-01-10", "2020-03-10"});
    const auto intervals = emerging_words(corpus, *parse_time("2020-03-01"),
                                          *parse_time("2020-05-01"), plain_config());
    for (const auto& interval : intervals) CHECK(interval.words.empty());
}

TEST_CASE("emerging_words: requires data before the period") {
    const Corpus corpus = corpus_from_texts({"wort"}, {"2020-03-10"});
    CHECK_THROWS_WITH_AS(emerging_words(corpus, *parse_time("2020-03-01"),
                                        *parse_time("2020-05-01"), plain_config()),
                         doctest::Contains("before period"), DataError);
}

TEST_CASE("emerging_words: never lists a term with a pre-period occurrence") {
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        const Corpus corpus = testgen::random_corpus(seed);
        const UtcTime period_start = *parse_time("2020-01-01");
        const UtcTime period_end = *parse_time("2020-09-01");
        const auto intervals =
            emerging_words(corpus, period_start, period_end, plain_config(), 50, 2);
        for (const auto& interval : intervals) {
            for (const auto& [term, freq] : interval.words) {
                CHECK(freq > 0);
                for (const auto& rec : corpus.records()) {
                    if (rec.timestamp >= period_start) break;
                    for (const auto& tok : normalize(rec.text, plain_config()))
                        CHECK(tok != term);
                }
            }
        }
    }
}

TEST_CASE("emerging_words: first occurrence is computed on stems") {
    // "Virologen" before the period shares a stem with "Virologe" inside it,
    // so that stem is not emerging; an unseen stem is.
    NormalizerConfig config;  // german stemmer, no stopwords
    const Corpus corpus = corpus_from_texts(
        {"Virologen reden", "Virologe und Maskenpflicht"}, {"2020-01-10", "2020-03-10"});
    const auto intervals = emerging_words(corpus, *parse_time("2020-03-01"),
                                          *parse_time("2020-05-01"), config);
    bool saw_maskenpflicht = false;
    for (const auto& interval : intervals) {
        for (const auto& [term, freq] : interval.words) {
            CHECK(term != "virolog");
            if (term == "maskenpflicht") saw_maskenpflicht = true;
        }
    }
    CHECK(saw_maskenpflicht);
}
