#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace driftlab {

// UTC timestamp, second resolution, proleptic Gregorian calendar.
struct UtcTime {
    std::int64_t seconds = 0;  // since 1970-01-01T00:00:00Z

    friend constexpr auto operator<=>(const UtcTime&, const UtcTime&) = default;
    constexpr UtcTime plus_seconds(std::int64_t s) const { return UtcTime{seconds + s}; }
};

struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
};

UtcTime to_utc(const CivilDateTime& c);
CivilDateTime to_civil(UtcTime t);

// ISO-8601: "YYYY-MM-DD" optionally followed by ("T" or " ") "HH:MM:SS",
// optional fractional seconds (truncated), optional "Z" or "±HH[:]MM" offset.
// Timestamps without an offset are treated as UTC.
std::optional<UtcTime> parse_time(std::string_view text);

std::string format_time(UtcTime t);   // "2020-03-01T07:30:00Z"
std::string month_label(UtcTime t);   // "2020-03"

UtcTime month_floor(UtcTime t);
// Calendar-month arithmetic; day-of-month clamped to the target month.
UtcTime add_months(UtcTime t, int n);
// Whole calendar months between the month of `a` and the month of `b`.
int months_between(UtcTime a, UtcTime b);

}  // namespace driftlab
