#include "driftlab/csv.hpp"

#include <charconv>

#include "driftlab/errors.hpp"

namespace driftlab {

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int ch = in_.get();
    if (ch == std::istream::traits_type::eof()) return false;
    record_line_ = current_line_;

    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    for (;;) {
        if (ch == std::istream::traits_type::eof()) {
            if (in_quotes)
                throw DataError("line " + std::to_string(record_line_) +
                                ": unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        const char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                const int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++current_line_;
                field.push_back(c);
            }
        } else if (c == '"') {
            if (!field.empty() || field_was_quoted)
                throw DataError("line " + std::to_string(current_line_) +
                                ": quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (c == '\n') {
            ++current_line_;
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
        }
        ch = in_.get();
    }
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace driftlab
