#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/corpus.hpp"
#include "driftlab/time.hpp"

namespace driftlab {

// Piecewise-linear curve over time; clamped outside the knot range.
struct CurveKnot {
    UtcTime t;
    double value = 0.0;
};
using Curve = std::vector<CurveKnot>;

double curve_value(const Curve& curve, UtcTime t);

enum class Channel { Clean, Abusive };

struct TopicSpec {
    std::string name;
    Channel channel = Channel::Clean;
    std::vector<std::string> words;
    Curve weight;  // channel-local mixture share over time
};

struct EventSpec {
    std::string name;
    UtcTime time;  // burst starts here and persists
    Channel channel = Channel::Clean;
    std::vector<std::string> words;
    double intensity = 0.0;  // channel-local mixture share once active
};

// P(rejected | abusive-token density d). Hard step at `threshold` when
// sharpness is absent, logistic ramp otherwise.
struct LabelRule {
    double threshold = 0.2;
    std::optional<double> sharpness;
    double p_low = 0.0;
    double p_high = 1.0;

    double probability(double density) const;
};

struct LengthDistribution {
    enum class Kind { Uniform, Poisson };
    Kind kind = Kind::Uniform;
    std::uint32_t min = 8;
    std::uint32_t max = 40;   // uniform only
    double mean = 25.0;       // poisson only; clamped below by min
};

// Generator spec: virtual drift via topic weight curves and burst events,
// real drift via a time-varying label threshold shift, class-distribution
// drift via the prior curve.
struct DriftSpec {
    UtcTime span_start;
    UtcTime span_end;  // exclusive
    std::size_t n_comments = 0;
    std::uint64_t seed = 0;

    std::vector<std::string> clean_base;
    std::vector<std::string> abusive_base;
    std::vector<TopicSpec> topics;
    std::vector<EventSpec> events;

    LabelRule label_rule;
    Curve label_threshold_drift;  // optional additive shift of the threshold
    Curve class_prior;            // target P(rejected) over time (required)
    double density_low = 0.2;     // abusive-token density range for non-clean draws
    double density_high = 0.6;
    LengthDistribution length;
    double zipf_exponent = 1.0;   // within-pool frequency skew
    Curve timestamp_weights;      // optional piecewise-constant arrival density

    // Throws DataError naming the offending field.
    void validate() const;

    static DriftSpec from_json(std::istream& in);
    static DriftSpec from_json_text(std::string_view text);

    // Every word reachable through the abusive channel (raw surface forms).
    std::vector<std::string> abusive_channel_words() const;
};

// Deterministic function of the spec; timestamps ascending with ids assigned
// in draw order, labels drawn from the realized token density.
Corpus generate(const DriftSpec& spec);

struct MonthlyPriorCheck {
    std::string month;
    std::size_t n = 0;
    std::size_t n_rejected = 0;
    double realized = 0.0;
    double expected = 0.0;  // mean target prior over the month's records
    double sigma = 0.0;     // binomial sd of the rejected count / n
    bool within_3_sigma = true;
};

struct DensityBucketCheck {
    double bucket_low = 0.0;
    double bucket_high = 0.0;
    std::size_t n = 0;
    std::size_t n_rejected = 0;
    double realized = 0.0;
    double expected = 0.0;  // mean label_rule probability over the bucket's records
    double sigma = 0.0;
    bool within_3_sigma = true;
};

struct EventCheck {
    std::string name;
    std::uint64_t pre_occurrences = 0;   // pool-word tokens before the event
    std::uint64_t post_occurrences = 0;
    double mixture_js_divergence = 0.0;  // token distributions before vs after
};

struct DriftDiagnostics {
    std::vector<MonthlyPriorCheck> monthly_prior;
    std::vector<DensityBucketCheck> density_buckets;
    std::vector<EventCheck> events;
    bool all_within_bounds = true;
};

// Compares the realized corpus against the spec it was generated from.
DriftDiagnostics validate_drift(const Corpus& corpus, const DriftSpec& spec);

}  // namespace driftlab
