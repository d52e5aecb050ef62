#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "driftlab/driftstats.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/synthgen.hpp"
#include "driftlab/textprep.hpp"
#include "support/testgen.hpp"

using namespace driftlab;

namespace {

DriftSpec small_spec(std::uint64_t seed) {
    DriftSpec spec;
    spec.seed = seed;
    spec.span_start = *parse_time("2019-01-01T00:00:00Z");
    spec.span_end = *parse_time("2019-09-01T00:00:00Z");
    spec.n_comments = 1500;
    spec.clean_base = testgen::small_vocabulary(24, "ka");
    spec.abusive_base = testgen::small_vocabulary(10, "zu");
    spec.label_rule = {0.15, std::nullopt, 0.02, 0.98};
    spec.class_prior = {{UtcTime{0}, 0.5}};
    spec.density_low = 0.25;
    spec.density_high = 0.6;
    spec.length = {LengthDistribution::Kind::Uniform, 6, 20, 0.0};
    spec.zipf_exponent = 1.0;
    return spec;
}

NormalizerConfig plain_config() {
    NormalizerConfig config;
    config.stemmer = "none";
    return config;
}

std::string corpus_bytes(const Corpus& corpus) {
    std::ostringstream out;
    write_corpus_csv(out, corpus);
    return out.str();
}

}  // namespace

TEST_CASE("generate: deterministic byte-identical output") {
    const DriftSpec spec = small_spec(42);
    CHECK(corpus_bytes(generate(spec)) == corpus_bytes(generate(spec)));

    DriftSpec other = spec;
    other.seed = 43;
    CHECK(corpus_bytes(generate(other)) != corpus_bytes(generate(spec)));
}

TEST_CASE("generate: corpus round trips through the ingest CSV format") {
    const Corpus corpus = generate(small_spec(7));
    std::istringstream in(corpus_bytes(corpus));
    const auto again = ingest_csv(in);
    REQUIRE(again.corpus.size() == corpus.size());
    CHECK(again.summary.skipped_rows == 0);
    CHECK(again.summary.length_corrections == 0);
    CHECK(again.corpus.ids() == corpus.ids());
    CHECK(again.corpus.rejected_count() == corpus.rejected_count());
}

TEST_CASE("generate: boundary label rules force the classes") {
    DriftSpec all_rejected = small_spec(1);
    all_rejected.label_rule = {0.0, std::nullopt, 0.0, 1.0};  // every density >= 0
    all_rejected.class_prior = {{UtcTime{0}, 1.0}};
    const Corpus rejected = generate(all_rejected);
    CHECK(rejected.rejected_count() == rejected.size());

    DriftSpec all_accepted = small_spec(2);
    all_accepted.label_rule = {1.0, std::nullopt, 0.0, 1.0};  // densities stay below 1
    all_accepted.class_prior = {{UtcTime{0}, 0.0}};
    const Corpus accepted = generate(all_accepted);
    CHECK(accepted.accepted_count() == accepted.size());
}

TEST_CASE("generate: unreachable class prior names the field") {
    DriftSpec spec = small_spec(3);
    spec.label_rule = {0.15, std::nullopt, 0.0, 0.5};  // max achievable prior is 0.5
    spec.class_prior = {{UtcTime{0}, 0.9}};
    CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("class_prior"), DataError);
}

TEST_CASE("spec validation errors name the offending field") {
    DriftSpec spec = small_spec(4);
    SUBCASE("span") {
        spec.span_end = spec.span_start;
        CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("spec.span"), DataError);
    }
    SUBCASE("empty pool") {
        spec.clean_base.clear();
        CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("lexicons.clean"), DataError);
    }
    SUBCASE("density range") {
        spec.density_low = 0.7;
        spec.density_high = 0.3;
        CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("abusive_density"), DataError);
    }
    SUBCASE("cross-channel overlap") {
        spec.abusive_base.push_back(spec.clean_base.front());
        CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("both"), DataError);
    }
    SUBCASE("mixture budget") {
        TopicSpec topic;
        topic.name = "t";
        topic.channel = Channel::Clean;
        topic.words = testgen::small_vocabulary(5, "qo");
        topic.weight = {{spec.span_start, 0.7}, {spec.span_end, 0.7}};
        spec.topics.push_back(topic);
        spec.topics.push_back(topic);
        spec.topics.back().words = testgen::small_vocabulary(5, "vu");
        CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("exceed"), DataError);
    }
}

TEST_CASE("validate_drift: monthly prior tracks a drifting target curve") {
    DriftSpec spec = small_spec(11);
    spec.n_comments = 8000;
    spec.class_prior = {{spec.span_start, 0.3}, {spec.span_end, 0.7}};
    const Corpus corpus = generate(spec);
    const auto diag = validate_drift(corpus, spec);
    CHECK(diag.all_within_bounds);
    REQUIRE(diag.monthly_prior.size() == 8);
    CHECK(diag.monthly_prior.front().expected < 0.40);
    CHECK(diag.monthly_prior.back().expected > 0.60);
    for (const auto& m : diag.monthly_prior) {
        CAPTURE(m.month);
        CHECK(m.within_3_sigma);
    }
}

TEST_CASE("validate_drift: density buckets match a logistic label rule") {
    DriftSpec spec = small_spec(12);
    spec.n_comments = 6000;
    spec.label_rule = {0.3, 8.0, 0.05, 0.9};
    const Corpus corpus = generate(spec);
    const auto diag = validate_drift(corpus, spec);
    for (const auto& bucket : diag.density_buckets) {
        CAPTURE(bucket.bucket_low);
        CHECK(bucket.within_3_sigma);
    }
}

TEST_CASE("validate_drift: constant prior lands in a tight binomial interval") {
    DriftSpec spec = small_spec(13);
    spec.n_comments = 10000;
    const Corpus corpus = generate(spec);
    const double realized =
        static_cast<double>(corpus.rejected_count()) / static_cast<double>(corpus.size());
    // 3-sigma band for p = 0.5, n = 10000 is +-0.015.
    CHECK(realized > 0.47);
    CHECK(realized < 0.53);
}

TEST_CASE("events: zero intensity leaves no trace, bursts dominate emerging words") {
    DriftSpec spec = small_spec(21);
    spec.n_comments = 4000;
    EventSpec event;
    event.name = "burst";
    event.time = *parse_time("2019-05-01T00:00:00Z");
    event.channel = Channel::Clean;
    event.words = testgen::small_vocabulary(6, "neo");
    event.intensity = 0.0;
    spec.events.push_back(event);

    SUBCASE("intensity zero: burst words absent") {
        const Corpus corpus = generate(spec);
        const auto diag = validate_drift(corpus, spec);
        REQUIRE(diag.events.size() == 1);
        CHECK(diag.events[0].pre_occurrences == 0);
        CHECK(diag.events[0].post_occurrences == 0);
    }
    SUBCASE("active burst tops the post-event emerging list") {
        spec.events[0].intensity = 0.4;
        const Corpus corpus = generate(spec);
        const auto intervals =
            emerging_words(corpus, event.time, spec.span_end, plain_config(), 6, 4);
        REQUIRE_FALSE(intervals.empty());
        REQUIRE_FALSE(intervals[0].words.empty());
        const std::set<std::string> pool(event.words.begin(), event.words.end());
        for (const auto& [term, freq] : intervals[0].words) {
            CAPTURE(term);
            CHECK(pool.contains(term));
            CHECK(freq > 0);
        }
    }
}

TEST_CASE("label threshold drift changes p(label | density) without moving the prior") {
    DriftSpec spec = small_spec(17);
    spec.n_comments = 8000;
    spec.label_rule = {0.3, std::nullopt, 0.0, 1.0};
    spec.density_low = 0.0;
    spec.density_high = 0.6;
    // Must stay reachable after the threshold rises to 0.5.
    spec.class_prior = {{UtcTime{0}, 0.12}};
    const UtcTime mid{(spec.span_start.seconds + spec.span_end.seconds) / 2};
    // Hard threshold jumps from 0.30 to 0.50 at mid-span.
    spec.label_threshold_drift = {{mid.plus_seconds(-1), 0.0}, {mid, 0.2}};
    const Corpus corpus = generate(spec);

    // Comments with density in (0.35, 0.45) flip from always-rejected to
    // always-accepted at the drift point.
    const auto abusive_words = spec.abusive_channel_words();
    const std::set<std::string> abusive(abusive_words.begin(), abusive_words.end());
    std::size_t pre_n = 0, pre_rej = 0, post_n = 0, post_rej = 0;
    for (const auto& rec : corpus.records()) {
        std::size_t hits = 0;
        std::size_t total = 0;
        for (const auto& tok : normalize(rec.text, plain_config())) {
            ++total;
            hits += abusive.contains(tok) ? 1 : 0;
        }
        if (total == 0) continue;
        const double density = static_cast<double>(hits) / static_cast<double>(total);
        if (density <= 0.35 || density >= 0.45) continue;
        if (rec.timestamp < mid) {
            ++pre_n;
            pre_rej += rec.rejected;
        } else {
            ++post_n;
            post_rej += rec.rejected;
        }
    }
    REQUIRE(pre_n > 20);
    REQUIRE(post_n > 20);
    CHECK(static_cast<double>(pre_rej) / static_cast<double>(pre_n) == doctest::Approx(1.0));
    CHECK(static_cast<double>(post_rej) / static_cast<double>(post_n) == doctest::Approx(0.0));

    // The class prior still tracks its (unchanged) target curve.
    const auto diag = validate_drift(corpus, spec);
    CHECK(diag.all_within_bounds);
}

TEST_CASE("monotone drift response: stronger bursts never raise cross-event correlation") {
    double previous = 2.0;
    for (const double intensity : {0.0, 0.2, 0.4, 0.6}) {
        DriftSpec spec = small_spec(31);
        spec.n_comments = 5000;
        EventSpec event;
        event.name = "burst";
        event.time = *parse_time("2019-05-01T00:00:00Z");
        event.channel = Channel::Clean;
        event.words = testgen::small_vocabulary(20, "neo");
        event.intensity = intensity;
        spec.events.push_back(event);
        const Corpus corpus = generate(spec);

        RankListParams params;
        params.min_corpus_freq = 2;
        const auto pre = tfidf_rank_list(slice_by_time(corpus, spec.span_start, event.time),
                                         plain_config(), params);
        const auto post = tfidf_rank_list(slice_by_time(corpus, event.time, spec.span_end),
                                          plain_config(), params);
        const double rho = spearman(pre, post);
        CAPTURE(intensity);
        CHECK(rho <= previous + 0.03);  // statistical slack at matched seeds
        previous = rho;
    }
}

TEST_CASE("timestamp weights skew arrivals toward heavy segments") {
    DriftSpec spec = small_spec(23);
    spec.n_comments = 4000;
    const UtcTime mid{(spec.span_start.seconds + spec.span_end.seconds) / 2};
    // Second half of the span receives 4x the arrival density.
    spec.timestamp_weights = {{spec.span_start, 1.0}, {mid, 4.0}};
    const Corpus corpus = generate(spec);
    const std::size_t first_half = slice_by_time(corpus, spec.span_start, mid).size();
    const std::size_t second_half = slice_by_time(corpus, mid, spec.span_end).size();
    CHECK(first_half + second_half == corpus.size());
    const double ratio = static_cast<double>(second_half) / static_cast<double>(first_half);
    CHECK(ratio > 3.2);  // 4.0 expected, binomial noise at n=4000
    CHECK(ratio < 4.8);
}

TEST_CASE("spec JSON parsing: field errors carry the field name") {
    CHECK_THROWS_WITH_AS(DriftSpec::from_json_text("{"), doctest::Contains("spec JSON"),
                         DataError);
    CHECK_THROWS_WITH_AS(
        DriftSpec::from_json_text(R"({"span": {"start": "nope", "end": "2019-02-01"},
            "n_comments": 10, "lexicons": {"clean": ["aa"], "abusive": ["bb"]},
            "class_prior": 0.5})"),
        doctest::Contains("span.start"), DataError);
    const char* missing_prior = R"({"span": {"start": "2019-01-01", "end": "2019-02-01"},
        "n_comments": 10, "lexicons": {"clean": ["aa"], "abusive": ["bb"]}})";
    CHECK_THROWS_AS(DriftSpec::from_json_text(missing_prior), DataError);
}

TEST_CASE("zero-drift spec: equal-duration halves stay rank-correlated") {
    std::ifstream in(std::string(DRIFTLAB_SPECS_DIR) + "/zero_drift.json");
    REQUIRE(in.good());
    const DriftSpec spec = DriftSpec::from_json(in);
    const Corpus corpus = generate(spec);
    const UtcTime mid{(spec.span_start.seconds + spec.span_end.seconds) / 2};
    NormalizerConfig config;
    config.stopwords = default_german_stopwords();
    const auto first = tfidf_rank_list(slice_by_time(corpus, spec.span_start, mid), config);
    const auto second = tfidf_rank_list(slice_by_time(corpus, mid, spec.span_end), config);
    CHECK(spearman(first, second) >= 0.95);
}

TEST_CASE("shipped specs parse, validate, and survive normalization untouched") {
    NormalizerConfig config;  // german stemmer + shipped stopword list
    config.stopwords = default_german_stopwords();
    for (const char* name : {"zero_drift.json", "gradual_drift.json", "burst_drift.json"}) {
        CAPTURE(name);
        std::ifstream in(std::string(DRIFTLAB_SPECS_DIR) + "/" + name);
        REQUIRE(in.good());
        const DriftSpec spec = DriftSpec::from_json(in);
        CHECK(spec.n_comments >= 15000);

        // Pool words must be stemmer fixed points and never stopwords, so the
        // normalized pipeline sees exactly the raw pool vocabulary.
        std::vector<std::vector<std::string>> pools = {spec.clean_base, spec.abusive_base};
        for (const auto& t : spec.topics) pools.push_back(t.words);
        for (const auto& e : spec.events) pools.push_back(e.words);
        for (const auto& pool : pools) {
            for (const auto& w : pool) {
                const auto tokens = normalize(w, config);
                REQUIRE(tokens.size() == 1);
                CHECK(tokens[0] == w);
            }
        }
    }
}
