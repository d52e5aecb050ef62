#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace driftlab {

// RFC-4180 CSV: comma separated, double-quote quoting with "" escapes,
// LF or CRLF record ends, quoted fields may span lines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads one record into `fields`. Returns false at end of input.
    // Throws DataError on a quoting error (unterminated quote, junk after a
    // closing quote).
    bool next(std::vector<std::string>& fields);

    // 1-based physical line on which the most recent record started.
    long line() const { return record_line_; }

private:
    std::istream& in_;
    long current_line_ = 1;
    long record_line_ = 1;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest round-trip decimal representation (std::to_chars); locale-free.
std::string format_double(double v);

}  // namespace driftlab
