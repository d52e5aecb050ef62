#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "driftlab/time.hpp"

namespace driftlab {

// One timestamped, moderated comment. `comment_length` is the Unicode
// codepoint count of `text`, recomputed on ingest.
struct CommentRecord {
    std::int64_t id = 0;
    UtcTime timestamp;
    std::string text;
    std::uint8_t rejected = 0;  // 0 = accepted, 1 = rejected
    std::uint32_t comment_length = 0;
};

// Immutable, time-ordered collection of records. All transformations return
// new Corpus values; instances are safe to share across threads.
class Corpus {
public:
    Corpus() = default;

    // Sorts by (timestamp, id) and rejects duplicate ids.
    static Corpus from_records(std::vector<CommentRecord> records);

    const std::vector<CommentRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    std::size_t accepted_count() const { return accepted_; }
    std::size_t rejected_count() const { return rejected_; }

    // [first, last] timestamps; nullopt when empty.
    std::optional<std::pair<UtcTime, UtcTime>> time_span() const;

    std::vector<std::int64_t> ids() const;
    std::unordered_set<std::int64_t> id_set() const;

private:
    std::vector<CommentRecord> records_;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
};

struct IngestOptions {
    bool strict = false;
};

struct IngestSummary {
    std::size_t total = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t skipped_rows = 0;
    std::size_t length_corrections = 0;
    std::optional<UtcTime> start;
    std::optional<UtcTime> end;
    std::vector<std::string> warnings;  // capped; skip/correction notes
};

struct IngestResult {
    Corpus corpus;
    IngestSummary summary;
};

// Reads the interchange CSV (header columns ID, Date, Text, Rejected and
// optionally Comment_length, in any order). Malformed rows are skipped and
// logged, or abort with the offending line when strict. Duplicate ids always
// abort.
IngestResult ingest_csv(std::istream& in, const IngestOptions& options = {});

// Writes a corpus in the same CSV format ingest_csv reads (round-trips).
void write_corpus_csv(std::ostream& out, const Corpus& corpus);

// Records with start <= timestamp < end.
Corpus slice_by_time(const Corpus& corpus, UtcTime start, UtcTime end);

struct MonthlyPartition {
    std::string label;  // "2020-03"
    UtcTime start;      // month start (UTC)
    Corpus corpus;
};

// One partition per calendar month intersecting the corpus time span;
// concatenation reproduces the corpus. Corpus must be non-empty.
std::vector<MonthlyPartition> monthly_partitions(const Corpus& corpus);

// Equalizes class counts by uniform undersampling of the majority class;
// the minority class is retained entirely. Errors when a class is absent.
Corpus undersample_balanced(const Corpus& corpus, std::uint64_t seed);

// Uniform subset of exactly n records, without replacement.
Corpus undersample_to_size(const Corpus& corpus, std::size_t n, std::uint64_t seed);

// Records whose id is not in `ids`.
Corpus exclude(const Corpus& corpus, const std::unordered_set<std::int64_t>& ids);

}  // namespace driftlab
