#include "driftlab/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "driftlab/errors.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/unicode.hpp"

namespace driftlab {
namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Zipf-weighted word pool: P(word at rank r) ~ 1/(r+1)^s.
struct PoolSampler {
    const std::vector<std::string>* words = nullptr;
    std::vector<double> cdf;

    PoolSampler() = default;
    PoolSampler(const std::vector<std::string>& w, double s) : words(&w) {
        cdf.reserve(w.size());
        double acc = 0.0;
        for (std::size_t r = 0; r < w.size(); ++r) {
            acc += 1.0 / std::pow(static_cast<double>(r + 1), s);
            cdf.push_back(acc);
        }
        for (double& c : cdf) c /= acc;
    }

    const std::string& draw(SplitMix64& rng) const {
        const double u = rng.next_double();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const auto idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cdf.begin()), words->size() - 1);
        return (*words)[idx];
    }
};

// One channel's mixture at a point in time: base pool plus the active
// topic/event pools with their weights.
struct ChannelMixture {
    const PoolSampler* base = nullptr;
    std::vector<std::pair<const PoolSampler*, double>> components;  // non-base
    double base_weight = 1.0;

    const std::string& draw(SplitMix64& rng) const {
        double u = rng.next_double();
        for (const auto& [pool, w] : components) {
            if (u < w) return pool->draw(rng);
            u -= w;
        }
        return base->draw(rng);
    }
};

struct Samplers {
    PoolSampler clean_base;
    PoolSampler abusive_base;
    std::vector<PoolSampler> topics;
    std::vector<PoolSampler> events;

    explicit Samplers(const DriftSpec& spec)
        : clean_base(spec.clean_base, spec.zipf_exponent),
          abusive_base(spec.abusive_base, spec.zipf_exponent) {
        topics.reserve(spec.topics.size());
        for (const auto& t : spec.topics) topics.emplace_back(t.words, spec.zipf_exponent);
        events.reserve(spec.events.size());
        for (const auto& e : spec.events) events.emplace_back(e.words, spec.zipf_exponent);
    }

    ChannelMixture mixture_at(const DriftSpec& spec, Channel channel, UtcTime t) const {
        ChannelMixture mix;
        mix.base = channel == Channel::Clean ? &clean_base : &abusive_base;
        double used = 0.0;
        for (std::size_t i = 0; i < spec.topics.size(); ++i) {
            if (spec.topics[i].channel != channel) continue;
            const double w = std::max(0.0, curve_value(spec.topics[i].weight, t));
            if (w > 0.0) {
                mix.components.emplace_back(&topics[i], w);
                used += w;
            }
        }
        for (std::size_t i = 0; i < spec.events.size(); ++i) {
            if (spec.events[i].channel != channel || t < spec.events[i].time) continue;
            if (spec.events[i].intensity > 0.0) {
                mix.components.emplace_back(&events[i], spec.events[i].intensity);
                used += spec.events[i].intensity;
            }
        }
        mix.base_weight = 1.0 - used;
        return mix;
    }
};

double rule_probability(const LabelRule& rule, double threshold, double density) {
    if (rule.sharpness) {
        return rule.p_low +
               (rule.p_high - rule.p_low) * sigmoid(*rule.sharpness * (density - threshold));
    }
    return density >= threshold ? rule.p_high : rule.p_low;
}

// Exact E[rule(round(d*L)/L)] for d ~ U(low, high): sums the rule over the
// realizable token counts k weighted by the measure of d mapping to k.
double expected_rule_over_density(const LabelRule& rule, double threshold, double low,
                                  double high, std::uint32_t length) {
    const double len = static_cast<double>(length);
    if (high <= low) {
        const double realized = static_cast<double>(std::llround(low * len)) / len;
        return rule_probability(rule, threshold, realized);
    }
    const auto k_min = static_cast<std::int64_t>(std::llround(low * len));
    const auto k_max = static_cast<std::int64_t>(std::llround(high * len));
    double acc = 0.0;
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        const double lo_d = std::max(low, (static_cast<double>(k) - 0.5) / len);
        const double hi_d = std::min(high, (static_cast<double>(k) + 0.5) / len);
        if (hi_d <= lo_d) continue;
        acc += (hi_d - lo_d) / (high - low) *
               rule_probability(rule, threshold, static_cast<double>(k) / len);
    }
    return acc;
}

std::uint32_t draw_length(const LengthDistribution& dist, SplitMix64& rng) {
    if (dist.kind == LengthDistribution::Kind::Uniform) {
        return dist.min + static_cast<std::uint32_t>(rng.bounded(dist.max - dist.min + 1));
    }
    // Knuth's Poisson sampler; deterministic given the rng stream.
    const double limit = std::exp(-dist.mean);
    std::uint32_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.next_double();
    } while (p > limit);
    return std::max(dist.min, k - 1);
}

UtcTime draw_timestamp(const DriftSpec& spec, SplitMix64& rng) {
    const double total = static_cast<double>(spec.span_end.seconds - spec.span_start.seconds);
    if (spec.timestamp_weights.empty()) {
        const auto offset = static_cast<std::int64_t>(rng.next_double() * total);
        return UtcTime{spec.span_start.seconds + std::min<std::int64_t>(
                                                     offset, spec.span_end.seconds -
                                                                 spec.span_start.seconds - 1)};
    }
    // Piecewise-constant density: weight knot i applies on [t_i, t_{i+1}).
    const auto& knots = spec.timestamp_weights;
    std::vector<double> seg_mass;
    std::vector<std::pair<std::int64_t, std::int64_t>> seg_bounds;
    const std::int64_t start = spec.span_start.seconds;
    const std::int64_t end = spec.span_end.seconds;
    double mass = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const std::int64_t lo = std::max(start, knots[i].t.seconds);
        const std::int64_t hi =
            i + 1 < knots.size() ? std::min(end, knots[i + 1].t.seconds) : end;
        if (hi <= lo) continue;
        mass += knots[i].value * static_cast<double>(hi - lo);
        seg_mass.push_back(mass);
        seg_bounds.emplace_back(lo, hi);
    }
    // Span before the first knot uses the first knot's weight.
    if (!seg_bounds.empty() && seg_bounds.front().first > start) {
        const double w = knots.front().value;
        const double extra = w * static_cast<double>(seg_bounds.front().first - start);
        for (double& m : seg_mass) m += extra;
        seg_mass.insert(seg_mass.begin(), extra);
        seg_bounds.insert(seg_bounds.begin(), {start, seg_bounds.front().first});
        mass += extra;
    }
    if (seg_bounds.empty() || mass <= 0.0)
        throw DataError("spec.timestamp_weights: zero total mass over the span");
    const double u = rng.next_double() * mass;
    std::size_t seg = 0;
    while (seg + 1 < seg_mass.size() && u >= seg_mass[seg]) ++seg;
    const double prev = seg == 0 ? 0.0 : seg_mass[seg - 1];
    const double frac = seg_mass[seg] > prev ? (u - prev) / (seg_mass[seg] - prev) : 0.0;
    const auto [lo, hi] = seg_bounds[seg];
    const auto offset = static_cast<std::int64_t>(frac * static_cast<double>(hi - lo));
    return UtcTime{std::min(lo + offset, hi - 1)};
}

void require(bool cond, const std::string& field, const std::string& message) {
    if (!cond) throw DataError("spec." + field + ": " + message);
}

}  // namespace

double curve_value(const Curve& curve, UtcTime t) {
    if (curve.empty()) return 0.0;
    if (t <= curve.front().t) return curve.front().value;
    if (t >= curve.back().t) return curve.back().value;
    std::size_t i = 1;
    while (curve[i].t < t) ++i;
    const auto& a = curve[i - 1];
    const auto& b = curve[i];
    if (b.t.seconds == a.t.seconds) return b.value;
    const double frac = static_cast<double>(t.seconds - a.t.seconds) /
                        static_cast<double>(b.t.seconds - a.t.seconds);
    return a.value + frac * (b.value - a.value);
}

double LabelRule::probability(double density) const {
    return rule_probability(*this, threshold, density);
}

std::vector<std::string> DriftSpec::abusive_channel_words() const {
    std::set<std::string> words(abusive_base.begin(), abusive_base.end());
    for (const auto& t : topics) {
        if (t.channel == Channel::Abusive) words.insert(t.words.begin(), t.words.end());
    }
    for (const auto& e : events) {
        if (e.channel == Channel::Abusive) words.insert(e.words.begin(), e.words.end());
    }
    return {words.begin(), words.end()};
}

void DriftSpec::validate() const {
    require(span_start < span_end, "span", "start must precede end");
    require(n_comments >= 1, "n_comments", "must be >= 1");
    require(!clean_base.empty(), "lexicons.clean", "pool must be non-empty");
    require(!abusive_base.empty(), "lexicons.abusive", "pool must be non-empty");
    require(zipf_exponent >= 0.0, "zipf_exponent", "must be >= 0");
    require(density_low >= 0.0 && density_high <= 1.0 && density_low <= density_high,
            "abusive_density", "need 0 <= low <= high <= 1");
    if (length.kind == LengthDistribution::Kind::Uniform) {
        require(length.min >= 1 && length.min <= length.max, "comment_length",
                "need 1 <= min <= max");
    } else {
        require(length.mean > 0.0, "comment_length.mean", "must be > 0");
        require(length.min >= 1, "comment_length.min", "must be >= 1");
    }
    require(label_rule.p_low >= 0.0 && label_rule.p_low <= 1.0, "label_rule.p_low",
            "must be in [0, 1]");
    require(label_rule.p_high >= 0.0 && label_rule.p_high <= 1.0, "label_rule.p_high",
            "must be in [0, 1]");
    require(std::isfinite(label_rule.threshold), "label_rule.threshold", "must be finite");
    if (label_rule.sharpness)
        require(*label_rule.sharpness > 0.0, "label_rule.sharpness", "must be > 0");
    require(!class_prior.empty(), "class_prior", "curve is required");
    for (const auto& k : class_prior) {
        require(k.value >= 0.0 && k.value <= 1.0, "class_prior", "values must be in [0, 1]");
    }
    for (std::size_t i = 0; i < topics.size(); ++i) {
        const std::string field = "topics[" + std::to_string(i) + "]";
        require(!topics[i].words.empty(), field + ".words", "pool must be non-empty");
        require(!topics[i].weight.empty(), field + ".weight", "curve is required");
        for (const auto& k : topics[i].weight)
            require(k.value >= 0.0, field + ".weight", "values must be >= 0");
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        const std::string field = "events[" + std::to_string(i) + "]";
        require(!events[i].words.empty(), field + ".words", "pool must be non-empty");
        require(events[i].intensity >= 0.0 && events[i].intensity <= 1.0, field + ".intensity",
                "must be in [0, 1]");
    }
    for (const auto& k : timestamp_weights)
        require(k.value >= 0.0, "timestamp_weights", "values must be >= 0");
    if (!timestamp_weights.empty()) {
        bool any = false;
        for (const auto& k : timestamp_weights) any = any || k.value > 0.0;
        require(any, "timestamp_weights", "at least one weight must be > 0");
    }

    // Channel budgets: topic curves are piecewise linear and event shares are
    // steps, so the worst case lies on a knot, an event edge, or a span end.
    std::vector<UtcTime> check_points{span_start, span_end.plus_seconds(-1)};
    for (const auto& t : topics) {
        for (const auto& k : t.weight) check_points.push_back(k.t);
    }
    for (const auto& e : events) {
        check_points.push_back(e.time);
        check_points.push_back(e.time.plus_seconds(-1));
    }
    for (const Channel channel : {Channel::Clean, Channel::Abusive}) {
        for (const UtcTime t : check_points) {
            if (t < span_start || t >= span_end) continue;
            double used = 0.0;
            for (const auto& topic : topics) {
                if (topic.channel == channel) used += std::max(0.0, curve_value(topic.weight, t));
            }
            for (const auto& e : events) {
                if (e.channel == channel && t >= e.time) used += e.intensity;
            }
            require(used <= 1.0 + 1e-9,
                    channel == Channel::Clean ? "topics/events (clean)" : "topics/events (abusive)",
                    "mixture shares exceed 1 at " + format_time(t));
        }
    }

    // Channels must be word-disjoint so realized density is recoverable from
    // the text.
    std::unordered_set<std::string_view> clean_words(clean_base.begin(), clean_base.end());
    for (const auto& t : topics) {
        if (t.channel == Channel::Clean) clean_words.insert(t.words.begin(), t.words.end());
    }
    for (const auto& e : events) {
        if (e.channel == Channel::Clean) clean_words.insert(e.words.begin(), e.words.end());
    }
    for (const auto& w : abusive_channel_words()) {
        require(!clean_words.contains(w), "lexicons",
                "word '" + w + "' appears in both the clean and abusive channels");
    }
}

Corpus generate(const DriftSpec& spec) {
    spec.validate();
    const Samplers samplers(spec);

    std::vector<CommentRecord> records;
    records.reserve(spec.n_comments);
    std::vector<std::string> tokens;
    for (std::size_t idx = 0; idx < spec.n_comments; ++idx) {
        SplitMix64 rng(derive_seed(spec.seed, {seed_tag::kRecord, idx}));
        CommentRecord rec;
        rec.id = static_cast<std::int64_t>(idx) + 1;
        rec.timestamp = draw_timestamp(spec, rng);
        const std::uint32_t length = draw_length(spec.length, rng);

        const double threshold =
            spec.label_rule.threshold + curve_value(spec.label_threshold_drift, rec.timestamp);
        const double target = curve_value(spec.class_prior, rec.timestamp);
        const double p_zero_density = rule_probability(spec.label_rule, threshold, 0.0);
        const double p_mixed = expected_rule_over_density(spec.label_rule, threshold,
                                                          spec.density_low, spec.density_high,
                                                          length);
        // Solve p_zero * p(reject|d=0) + (1 - p_zero) * p(reject|d>0) = target.
        double p_zero;
        if (std::abs(p_mixed - p_zero_density) < 1e-12) {
            if (std::abs(target - p_mixed) > 1e-9)
                throw DataError("spec.class_prior: target " + std::to_string(target) +
                                " unreachable at " + format_time(rec.timestamp) +
                                " (label_rule forces " + std::to_string(p_mixed) + ")");
            p_zero = 1.0;
        } else {
            p_zero = (p_mixed - target) / (p_mixed - p_zero_density);
            if (p_zero < -1e-9 || p_zero > 1.0 + 1e-9)
                throw DataError("spec.class_prior: target " + std::to_string(target) +
                                " unreachable at " + format_time(rec.timestamp) +
                                " (reachable range [" +
                                std::to_string(std::min(p_zero_density, p_mixed)) + ", " +
                                std::to_string(std::max(p_zero_density, p_mixed)) + "])");
            p_zero = std::clamp(p_zero, 0.0, 1.0);
        }

        double density = 0.0;
        if (rng.next_double() >= p_zero) {
            density = spec.density_low +
                      (spec.density_high - spec.density_low) * rng.next_double();
        }
        const auto n_abusive = static_cast<std::uint32_t>(
            std::llround(density * static_cast<double>(length)));
        const double realized = static_cast<double>(n_abusive) / static_cast<double>(length);
        rec.rejected =
            rng.next_double() < rule_probability(spec.label_rule, threshold, realized) ? 1 : 0;

        const ChannelMixture abusive_mix =
            samplers.mixture_at(spec, Channel::Abusive, rec.timestamp);
        const ChannelMixture clean_mix = samplers.mixture_at(spec, Channel::Clean, rec.timestamp);
        tokens.clear();
        tokens.reserve(length);
        for (std::uint32_t i = 0; i < n_abusive; ++i) tokens.push_back(abusive_mix.draw(rng));
        for (std::uint32_t i = n_abusive; i < length; ++i) tokens.push_back(clean_mix.draw(rng));
        shuffle(tokens, rng);

        std::string text;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i) text.push_back(' ');
            text += tokens[i];
        }
        rec.comment_length = static_cast<std::uint32_t>(codepoint_count(text));
        rec.text = std::move(text);
        records.push_back(std::move(rec));
    }
    return Corpus::from_records(std::move(records));
}

DriftDiagnostics validate_drift(const Corpus& corpus, const DriftSpec& spec) {
    DriftDiagnostics diag;
    const auto abusive_words_vec = spec.abusive_channel_words();
    const std::unordered_set<std::string_view> abusive_words(abusive_words_vec.begin(),
                                                             abusive_words_vec.end());

    const auto split_tokens = [](const std::string& text) {
        std::vector<std::string_view> out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto space = text.find(' ', pos);
            const auto end = space == std::string::npos ? text.size() : space;
            if (end > pos) out.push_back(std::string_view(text).substr(pos, end - pos));
            pos = end + 1;
        }
        return out;
    };

    // Monthly class prior vs the target curve.
    for (const auto& part : monthly_partitions(corpus)) {
        if (part.corpus.empty()) continue;
        MonthlyPriorCheck check;
        check.month = part.label;
        check.n = part.corpus.size();
        check.n_rejected = part.corpus.rejected_count();
        check.realized = static_cast<double>(check.n_rejected) / static_cast<double>(check.n);
        double sum_p = 0.0;
        double var = 0.0;
        for (const auto& rec : part.corpus.records()) {
            const double p = curve_value(spec.class_prior, rec.timestamp);
            sum_p += p;
            var += p * (1.0 - p);
        }
        check.expected = sum_p / static_cast<double>(check.n);
        check.sigma = std::sqrt(var) / static_cast<double>(check.n);
        check.within_3_sigma =
            std::abs(check.realized - check.expected) <= 3.0 * check.sigma + 1e-9;
        diag.all_within_bounds = diag.all_within_bounds && check.within_3_sigma;
        diag.monthly_prior.push_back(std::move(check));
    }

    // P(rejected | realized density bucket) vs the label rule.
    constexpr std::size_t kBuckets = 10;
    struct Bucket {
        std::size_t n = 0;
        std::size_t rejected = 0;
        double sum_p = 0.0;
        double var = 0.0;
    };
    std::vector<Bucket> buckets(kBuckets + 1);  // bucket 0: density exactly 0
    for (const auto& rec : corpus.records()) {
        const auto tokens = split_tokens(rec.text);
        if (tokens.empty()) continue;
        std::size_t n_abusive = 0;
        for (const auto& t : tokens) n_abusive += abusive_words.contains(t) ? 1 : 0;
        const double density =
            static_cast<double>(n_abusive) / static_cast<double>(tokens.size());
        std::size_t b = 0;
        if (n_abusive > 0) {
            b = 1 + std::min<std::size_t>(kBuckets - 1,
                                          static_cast<std::size_t>(density * kBuckets));
        }
        const double threshold =
            spec.label_rule.threshold + curve_value(spec.label_threshold_drift, rec.timestamp);
        const double p = rule_probability(spec.label_rule, threshold, density);
        auto& bucket = buckets[b];
        ++bucket.n;
        bucket.rejected += rec.rejected;
        bucket.sum_p += p;
        bucket.var += p * (1.0 - p);
    }
    for (std::size_t b = 0; b < buckets.size(); ++b) {
        const auto& bucket = buckets[b];
        if (bucket.n == 0) continue;
        DensityBucketCheck check;
        check.bucket_low = b == 0 ? 0.0 : static_cast<double>(b - 1) / kBuckets;
        check.bucket_high = b == 0 ? 0.0 : static_cast<double>(b) / kBuckets;
        check.n = bucket.n;
        check.n_rejected = bucket.rejected;
        check.realized = static_cast<double>(bucket.rejected) / static_cast<double>(bucket.n);
        check.expected = bucket.sum_p / static_cast<double>(bucket.n);
        check.sigma = std::sqrt(bucket.var) / static_cast<double>(bucket.n);
        check.within_3_sigma =
            std::abs(check.realized - check.expected) <= 3.0 * check.sigma + 1e-9;
        diag.all_within_bounds = diag.all_within_bounds && check.within_3_sigma;
        diag.density_buckets.push_back(std::move(check));
    }

    // Per event: pool-word occurrences before/after, and the divergence of
    // the overall token distributions across the event edge.
    for (const auto& event : spec.events) {
        EventCheck check;
        check.name = event.name;
        const std::unordered_set<std::string_view> pool(event.words.begin(), event.words.end());
        std::unordered_map<std::string_view, double> pre_dist;
        std::unordered_map<std::string_view, double> post_dist;
        double pre_total = 0.0;
        double post_total = 0.0;
        for (const auto& rec : corpus.records()) {
            const bool post = rec.timestamp >= event.time;
            for (const auto& t : split_tokens(rec.text)) {
                if (pool.contains(t)) {
                    if (post)
                        ++check.post_occurrences;
                    else
                        ++check.pre_occurrences;
                }
                auto& dist = post ? post_dist : pre_dist;
                dist[t] += 1.0;
                (post ? post_total : pre_total) += 1.0;
            }
        }
        if (pre_total > 0 && post_total > 0) {
            double js = 0.0;
            std::set<std::string_view> vocab;
            for (const auto& [w, _] : pre_dist) vocab.insert(w);
            for (const auto& [w, _] : post_dist) vocab.insert(w);
            for (const auto& w : vocab) {
                const auto it_p = pre_dist.find(w);
                const auto it_q = post_dist.find(w);
                const double p = it_p == pre_dist.end() ? 0.0 : it_p->second / pre_total;
                const double q = it_q == post_dist.end() ? 0.0 : it_q->second / post_total;
                const double m = 0.5 * (p + q);
                if (p > 0) js += 0.5 * p * std::log(p / m);
                if (q > 0) js += 0.5 * q * std::log(q / m);
            }
            check.mixture_js_divergence = js;
        }
        diag.events.push_back(std::move(check));
    }
    return diag;
}

DriftSpec DriftSpec::from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("spec JSON: ") + e.what());
    }

    const auto parse_ts = [](const nlohmann::json& node, const std::string& field) {
        if (!node.is_string()) throw DataError("spec." + field + ": expected an ISO-8601 string");
        const auto t = parse_time(node.get<std::string>());
        if (!t) throw DataError("spec." + field + ": unparseable time '" +
                                node.get<std::string>() + "'");
        return *t;
    };
    const auto parse_curve = [&](const nlohmann::json& node, const std::string& field) {
        Curve curve;
        if (node.is_number()) {  // shorthand: constant curve
            curve.push_back({UtcTime{0}, node.get<double>()});
            return curve;
        }
        if (!node.is_array()) throw DataError("spec." + field + ": expected a number or array");
        for (const auto& knot : node) {
            if (!knot.contains("t") || !knot.contains("value"))
                throw DataError("spec." + field + ": knots need {t, value}");
            curve.push_back({parse_ts(knot["t"], field + ".t"), knot["value"].get<double>()});
        }
        std::sort(curve.begin(), curve.end(),
                  [](const CurveKnot& a, const CurveKnot& b) { return a.t < b.t; });
        return curve;
    };
    const auto parse_words = [](const nlohmann::json& node, const std::string& field) {
        if (!node.is_array()) throw DataError("spec." + field + ": expected an array of words");
        std::vector<std::string> out;
        for (const auto& w : node) out.push_back(w.get<std::string>());
        return out;
    };
    const auto parse_channel = [](const nlohmann::json& node, const std::string& field) {
        const auto s = node.get<std::string>();
        if (s == "clean") return Channel::Clean;
        if (s == "abusive") return Channel::Abusive;
        throw DataError("spec." + field + ": expected \"clean\" or \"abusive\"");
    };

    DriftSpec spec;
    try {
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.span_start = parse_ts(j.at("span").at("start"), "span.start");
        spec.span_end = parse_ts(j.at("span").at("end"), "span.end");
        spec.n_comments = j.at("n_comments").get<std::size_t>();
        spec.clean_base = parse_words(j.at("lexicons").at("clean"), "lexicons.clean");
        spec.abusive_base = parse_words(j.at("lexicons").at("abusive"), "lexicons.abusive");
        if (j.contains("zipf_exponent")) spec.zipf_exponent = j["zipf_exponent"].get<double>();
        if (j.contains("topics")) {
            const auto& topics = j["topics"];
            for (std::size_t i = 0; i < topics.size(); ++i) {
                const auto& node = topics[i];
                const std::string field = "topics[" + std::to_string(i) + "]";
                TopicSpec topic;
                topic.name = node.value("name", "topic_" + std::to_string(i));
                if (node.contains("channel"))
                    topic.channel = parse_channel(node["channel"], field + ".channel");
                topic.words = parse_words(node.at("words"), field + ".words");
                topic.weight = parse_curve(node.at("weight"), field + ".weight");
                spec.topics.push_back(std::move(topic));
            }
        }
        if (j.contains("events")) {
            const auto& events = j["events"];
            for (std::size_t i = 0; i < events.size(); ++i) {
                const auto& node = events[i];
                const std::string field = "events[" + std::to_string(i) + "]";
                EventSpec event;
                event.name = node.value("name", "event_" + std::to_string(i));
                event.time = parse_ts(node.at("time"), field + ".time");
                if (node.contains("channel"))
                    event.channel = parse_channel(node["channel"], field + ".channel");
                event.words = parse_words(node.at("words"), field + ".words");
                event.intensity = node.at("intensity").get<double>();
                spec.events.push_back(std::move(event));
            }
        }
        if (j.contains("label_rule")) {
            const auto& node = j["label_rule"];
            spec.label_rule.threshold = node.value("threshold", spec.label_rule.threshold);
            spec.label_rule.p_low = node.value("p_low", spec.label_rule.p_low);
            spec.label_rule.p_high = node.value("p_high", spec.label_rule.p_high);
            if (node.contains("sharpness") && !node["sharpness"].is_null())
                spec.label_rule.sharpness = node["sharpness"].get<double>();
        }
        if (j.contains("label_threshold_drift"))
            spec.label_threshold_drift = parse_curve(j["label_threshold_drift"], "label_threshold_drift");
        spec.class_prior = parse_curve(j.at("class_prior"), "class_prior");
        if (j.contains("abusive_density")) {
            spec.density_low = j["abusive_density"].value("low", spec.density_low);
            spec.density_high = j["abusive_density"].value("high", spec.density_high);
        }
        if (j.contains("comment_length")) {
            const auto& node = j["comment_length"];
            const auto kind = node.value("kind", "uniform");
            if (kind == "uniform") {
                spec.length.kind = LengthDistribution::Kind::Uniform;
                spec.length.min = node.value("min", spec.length.min);
                spec.length.max = node.value("max", spec.length.max);
            } else if (kind == "poisson") {
                spec.length.kind = LengthDistribution::Kind::Poisson;
                spec.length.mean = node.value("mean", spec.length.mean);
                spec.length.min = node.value("min", std::uint32_t{1});
            } else {
                throw DataError("spec.comment_length.kind: expected \"uniform\" or \"poisson\"");
            }
        }
        if (j.contains("timestamp_weights"))
            spec.timestamp_weights = parse_curve(j["timestamp_weights"], "timestamp_weights");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

DriftSpec DriftSpec::from_json(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

}  // namespace driftlab
