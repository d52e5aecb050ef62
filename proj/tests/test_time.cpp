#include <doctest.h>

#include "driftlab/time.hpp"

using namespace driftlab;

TEST_CASE("civil round trip across leap years and epochs") {
    const CivilDateTime cases[] = {
        {1970, 1, 1, 0, 0, 0},   {2000, 2, 29, 12, 30, 45}, {2019, 11, 1, 0, 0, 0},
        {2020, 6, 29, 23, 59, 59}, {2020, 2, 29, 6, 0, 0},   {1969, 12, 31, 23, 59, 59},
    };
    for (const auto& c : cases) {
        const CivilDateTime back = to_civil(to_utc(c));
        CHECK(back.year == c.year);
        CHECK(back.month == c.month);
        CHECK(back.day == c.day);
        CHECK(back.hour == c.hour);
        CHECK(back.minute == c.minute);
        CHECK(back.second == c.second);
    }
    CHECK(to_utc({1970, 1, 1, 0, 0, 0}).seconds == 0);
    CHECK(to_utc({1970, 1, 2, 0, 0, 0}).seconds == 86400);
}

TEST_CASE("parse_time accepts ISO-8601 variants") {
    CHECK(parse_time("2019-01-01T00:00:00Z")->seconds == to_utc({2019, 1, 1, 0, 0, 0}).seconds);
    CHECK(parse_time("2019-01-01 00:00:00")->seconds == to_utc({2019, 1, 1, 0, 0, 0}).seconds);
    CHECK(parse_time("2019-01-01")->seconds == to_utc({2019, 1, 1, 0, 0, 0}).seconds);
    CHECK(parse_time("2019-01-01T12:00:00.5Z")->seconds == to_utc({2019, 1, 1, 12, 0, 0}).seconds);
    // Offsets convert to UTC.
    CHECK(parse_time("2019-01-01T01:00:00+01:00")->seconds ==
          to_utc({2019, 1, 1, 0, 0, 0}).seconds);
    CHECK(parse_time("2019-01-01T00:00:00-0130")->seconds ==
          to_utc({2019, 1, 1, 1, 30, 0}).seconds);
    CHECK(parse_time(" 2019-01-01T00:00:00Z ").has_value());

    CHECK_FALSE(parse_time("").has_value());
    CHECK_FALSE(parse_time("01.11.2018").has_value());
    CHECK_FALSE(parse_time("2019-13-01").has_value());
    CHECK_FALSE(parse_time("2019-02-29").has_value());
    CHECK_FALSE(parse_time("2019-01-01T25:00:00").has_value());
    CHECK_FALSE(parse_time("2019-01-01T00:00").has_value());
    CHECK_FALSE(parse_time("2019-01-01X00:00:00").has_value());
}

TEST_CASE("format_time round trips") {
    const UtcTime t = *parse_time("2020-03-01T07:30:00Z");
    CHECK(format_time(t) == "2020-03-01T07:30:00Z");
    CHECK(parse_time(format_time(t))->seconds == t.seconds);
    CHECK(month_label(t) == "2020-03");
}

TEST_CASE("month arithmetic") {
    const UtcTime t = *parse_time("2020-03-15T13:45:00Z");
    CHECK(format_time(month_floor(t)) == "2020-03-01T00:00:00Z");
    CHECK(format_time(add_months(month_floor(t), 1)) == "2020-04-01T00:00:00Z");
    CHECK(format_time(add_months(month_floor(t), -3)) == "2019-12-01T00:00:00Z");
    CHECK(format_time(add_months(month_floor(t), 12)) == "2021-03-01T00:00:00Z");
    // Day clamped at month end.
    CHECK(format_time(add_months(*parse_time("2020-01-31"), 1)) == "2020-02-29T00:00:00Z");
    CHECK(months_between(*parse_time("2019-11-01"), *parse_time("2020-06-30")) == 7);
}
