#include "driftlab/time.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace driftlab {
namespace {

// Howard Hinnant's civil calendar algorithms (public domain).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
    const unsigned doy = (153U * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;                  // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;         // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr std::array<int, 3> civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);           // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const auto y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);       // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                            // [0, 11]
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;                    // [1, 31]
    const unsigned m = mp + (mp < 10 ? 3 : -9);                         // [1, 12]
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

constexpr bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

constexpr int days_in_month(int y, int m) {
    constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : kDays[static_cast<std::size_t>(m - 1)];
}

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

UtcTime to_utc(const CivilDateTime& c) {
    const std::int64_t days = days_from_civil(c.year, c.month, c.day);
    return UtcTime{days * 86400 + c.hour * 3600 + c.minute * 60 + c.second};
}

CivilDateTime to_civil(UtcTime t) {
    std::int64_t days = t.seconds / 86400;
    std::int64_t rem = t.seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const auto ymd = civil_from_days(days);
    CivilDateTime c;
    c.year = ymd[0];
    c.month = ymd[1];
    c.day = ymd[2];
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

std::optional<UtcTime> parse_time(std::string_view s) {
    // Trim ASCII whitespace.
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

    CivilDateTime c;
    if (!parse_fixed_uint(s, 0, 4, c.year)) return std::nullopt;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_fixed_uint(s, 5, 2, c.month) || !parse_fixed_uint(s, 8, 2, c.day)) return std::nullopt;
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > days_in_month(c.year, c.month))
        return std::nullopt;

    std::size_t pos = 10;
    if (pos < s.size()) {
        if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
        ++pos;
        if (!parse_fixed_uint(s, pos, 2, c.hour) || pos + 8 > s.size() || s[pos + 2] != ':' ||
            s[pos + 5] != ':' || !parse_fixed_uint(s, pos + 3, 2, c.minute) ||
            !parse_fixed_uint(s, pos + 6, 2, c.second))
            return std::nullopt;
        if (c.hour > 23 || c.minute > 59 || c.second > 59) return std::nullopt;
        pos += 8;
        if (pos < s.size() && s[pos] == '.') {  // fractional seconds: truncate
            ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                return std::nullopt;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
    }

    int offset_seconds = 0;
    if (pos < s.size()) {
        const char tag = s[pos];
        if (tag == 'Z' || tag == 'z') {
            ++pos;
        } else if (tag == '+' || tag == '-') {
            ++pos;
            int oh = 0;
            int om = 0;
            if (!parse_fixed_uint(s, pos, 2, oh)) return std::nullopt;
            pos += 2;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos < s.size()) {
                if (!parse_fixed_uint(s, pos, 2, om)) return std::nullopt;
                pos += 2;
            }
            if (oh > 14 || om > 59) return std::nullopt;
            offset_seconds = (oh * 3600 + om * 60) * (tag == '+' ? 1 : -1);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;

    return UtcTime{to_utc(c).seconds - offset_seconds};
}

std::string format_time(UtcTime t) {
    const CivilDateTime c = to_civil(t);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                  c.hour, c.minute, c.second);
    return buf;
}

std::string month_label(UtcTime t) {
    const CivilDateTime c = to_civil(t);
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", c.year, c.month);
    return buf;
}

UtcTime month_floor(UtcTime t) {
    CivilDateTime c = to_civil(t);
    c.day = 1;
    c.hour = c.minute = c.second = 0;
    return to_utc(c);
}

UtcTime add_months(UtcTime t, int n) {
    CivilDateTime c = to_civil(t);
    const int total = (c.year * 12 + (c.month - 1)) + n;
    int year = total / 12;
    int month = total % 12;
    if (month < 0) {
        month += 12;
        --year;
    }
    c.year = year;
    c.month = month + 1;
    if (c.day > days_in_month(c.year, c.month)) c.day = days_in_month(c.year, c.month);
    return to_utc(c);
}

int months_between(UtcTime a, UtcTime b) {
    const CivilDateTime ca = to_civil(a);
    const CivilDateTime cb = to_civil(b);
    return (cb.year * 12 + cb.month) - (ca.year * 12 + ca.month);
}

}  // namespace driftlab
