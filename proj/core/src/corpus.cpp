#include "driftlab/corpus.hpp"

#include <algorithm>
#include <charconv>

#include "driftlab/csv.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/unicode.hpp"

namespace driftlab {
namespace {

constexpr std::size_t kMaxStoredWarnings = 100;

bool parse_int64(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

void add_warning(IngestSummary& summary, std::string message) {
    if (summary.warnings.size() < kMaxStoredWarnings) summary.warnings.push_back(std::move(message));
}

}  // namespace

Corpus Corpus::from_records(std::vector<CommentRecord> records) {
    std::sort(records.begin(), records.end(), [](const CommentRecord& a, const CommentRecord& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.id < b.id;
    });
    std::unordered_set<std::int64_t> seen;
    seen.reserve(records.size());
    Corpus c;
    for (const auto& r : records) {
        if (!seen.insert(r.id).second)
            throw DataError("duplicate record id " + std::to_string(r.id));
        if (r.rejected)
            ++c.rejected_;
        else
            ++c.accepted_;
    }
    c.records_ = std::move(records);
    return c;
}

std::optional<std::pair<UtcTime, UtcTime>> Corpus::time_span() const {
    if (records_.empty()) return std::nullopt;
    return std::make_pair(records_.front().timestamp, records_.back().timestamp);
}

std::vector<std::int64_t> Corpus::ids() const {
    std::vector<std::int64_t> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.id);
    return out;
}

std::unordered_set<std::int64_t> Corpus::id_set() const {
    std::unordered_set<std::int64_t> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.insert(r.id);
    return out;
}

IngestResult ingest_csv(std::istream& in, const IngestOptions& options) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw DataError("empty input: missing CSV header");

    long id_col = -1;
    long date_col = -1;
    long text_col = -1;
    long rejected_col = -1;
    long length_col = -1;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string& name = fields[i];
        if (name == "ID")
            id_col = static_cast<long>(i);
        else if (name == "Date")
            date_col = static_cast<long>(i);
        else if (name == "Text")
            text_col = static_cast<long>(i);
        else if (name == "Rejected")
            rejected_col = static_cast<long>(i);
        else if (name == "Comment_length")
            length_col = static_cast<long>(i);
    }
    for (const auto& [col, name] :
         {std::pair{id_col, "ID"}, {date_col, "Date"}, {text_col, "Text"},
          {rejected_col, "Rejected"}}) {
        if (col < 0) throw DataError(std::string("missing required CSV column '") + name + "'");
    }
    const auto min_fields =
        static_cast<std::size_t>(std::max({id_col, date_col, text_col, rejected_col, length_col})) + 1;

    IngestResult result;
    std::vector<CommentRecord> records;
    std::unordered_set<std::int64_t> seen_ids;
    long row = 0;
    while (reader.next(fields)) {
        ++row;
        const std::string where =
            "row " + std::to_string(row) + " (line " + std::to_string(reader.line()) + ")";
        std::string error;
        CommentRecord rec;
        if (fields.size() < min_fields) {
            error = "expected at least " + std::to_string(min_fields) + " fields, got " +
                    std::to_string(fields.size());
        } else if (!parse_int64(fields[static_cast<std::size_t>(id_col)], rec.id)) {
            error = "unparseable ID '" + fields[static_cast<std::size_t>(id_col)] + "'";
        } else if (auto t = parse_time(fields[static_cast<std::size_t>(date_col)]); !t) {
            error = "unparseable Date '" + fields[static_cast<std::size_t>(date_col)] + "'";
        } else {
            rec.timestamp = *t;
            const std::string& label = fields[static_cast<std::size_t>(rejected_col)];
            if (label == "0")
                rec.rejected = 0;
            else if (label == "1")
                rec.rejected = 1;
            else
                error = "label out of range: Rejected '" + label + "'";
        }
        if (error.empty()) {
            // Duplicate ids abort regardless of strictness.
            if (!seen_ids.insert(rec.id).second)
                throw DataError(where + ": duplicate id " + std::to_string(rec.id));
            rec.text = fields[static_cast<std::size_t>(text_col)];
            rec.comment_length = static_cast<std::uint32_t>(codepoint_count(rec.text));
            if (length_col >= 0) {
                std::int64_t claimed = 0;
                if (!parse_int64(fields[static_cast<std::size_t>(length_col)], claimed) ||
                    claimed != static_cast<std::int64_t>(rec.comment_length)) {
                    ++result.summary.length_corrections;
                    add_warning(result.summary,
                                where + ": Comment_length '" +
                                    fields[static_cast<std::size_t>(length_col)] +
                                    "' corrected to " + std::to_string(rec.comment_length));
                }
            }
            records.push_back(std::move(rec));
            continue;
        }
        if (options.strict) throw DataError(where + ": " + error);
        ++result.summary.skipped_rows;
        add_warning(result.summary, where + ": skipped: " + error);
    }

    result.corpus = Corpus::from_records(std::move(records));
    result.summary.total = result.corpus.size();
    result.summary.accepted = result.corpus.accepted_count();
    result.summary.rejected = result.corpus.rejected_count();
    if (auto span = result.corpus.time_span()) {
        result.summary.start = span->first;
        result.summary.end = span->second;
    }
    return result;
}

void write_corpus_csv(std::ostream& out, const Corpus& corpus) {
    out << "ID,Date,Text,Rejected,Comment_length\n";
    std::vector<std::string> fields(5);
    for (const auto& r : corpus.records()) {
        fields[0] = std::to_string(r.id);
        fields[1] = format_time(r.timestamp);
        fields[2] = r.text;
        fields[3] = r.rejected ? "1" : "0";
        fields[4] = std::to_string(r.comment_length);
        write_csv_row(out, fields);
    }
}

Corpus slice_by_time(const Corpus& corpus, UtcTime start, UtcTime end) {
    if (!(start < end)) throw DataError("slice_by_time: start must be < end");
    std::vector<CommentRecord> out;
    for (const auto& r : corpus.records()) {
        if (r.timestamp >= start && r.timestamp < end) out.push_back(r);
    }
    return Corpus::from_records(std::move(out));
}

std::vector<MonthlyPartition> monthly_partitions(const Corpus& corpus) {
    if (corpus.empty()) throw DataError("monthly_partitions: empty corpus");
    const auto span = *corpus.time_span();
    std::vector<MonthlyPartition> out;
    for (UtcTime m = month_floor(span.first); m <= span.second; m = add_months(m, 1)) {
        MonthlyPartition p;
        p.label = month_label(m);
        p.start = m;
        p.corpus = slice_by_time(corpus, m, add_months(m, 1));
        out.push_back(std::move(p));
    }
    return out;
}

Corpus undersample_balanced(const Corpus& corpus, std::uint64_t seed) {
    const std::size_t n_acc = corpus.accepted_count();
    const std::size_t n_rej = corpus.rejected_count();
    if (n_acc == 0 || n_rej == 0) throw DataError("cannot balance single-class corpus");
    if (n_acc == n_rej) return corpus;

    const std::uint8_t majority = n_acc > n_rej ? 0 : 1;
    const std::size_t keep = std::min(n_acc, n_rej);
    std::vector<std::size_t> majority_positions;
    majority_positions.reserve(std::max(n_acc, n_rej));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus.records()[i].rejected == majority) majority_positions.push_back(i);
    }
    SplitMix64 rng(seed);
    auto chosen = sample_indices(majority_positions.size(), keep, rng);

    std::vector<bool> selected(corpus.size(), false);
    for (std::size_t c : chosen) selected[majority_positions[c]] = true;
    std::vector<CommentRecord> out;
    out.reserve(2 * keep);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& r = corpus.records()[i];
        if (r.rejected != majority || selected[i]) out.push_back(r);
    }
    return Corpus::from_records(std::move(out));
}

Corpus undersample_to_size(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
    if (n == 0 || n > corpus.size())
        throw DataError("undersample_to_size: n = " + std::to_string(n) +
                        " out of range for corpus of size " + std::to_string(corpus.size()));
    if (n == corpus.size()) return corpus;
    SplitMix64 rng(seed);
    auto chosen = sample_indices(corpus.size(), n, rng);
    std::vector<CommentRecord> out;
    out.reserve(n);
    for (std::size_t i : chosen) out.push_back(corpus.records()[i]);
    return Corpus::from_records(std::move(out));
}

Corpus exclude(const Corpus& corpus, const std::unordered_set<std::int64_t>& ids) {
    std::vector<CommentRecord> out;
    for (const auto& r : corpus.records()) {
        if (!ids.contains(r.id)) out.push_back(r);
    }
    return Corpus::from_records(std::move(out));
}

}  // namespace driftlab
