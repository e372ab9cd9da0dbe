#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flarko {

// Calendar date stored as a civil day count since 1970-01-01.
// No time zone, no time of day. Comparisons and day arithmetic only.
class Date {
public:
    Date() = default;

    static Date from_ymd(int year, int month, int day);
    static Date from_days(std::int32_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    // Accepts YYYY-MM-DD and YYYY-M-D; a trailing time-of-day part
    // ("T.." or " ..") is ignored. Rejects out-of-range components.
    static std::optional<Date> try_parse(std::string_view text);
    static Date parse(std::string_view text);  // throws std::invalid_argument

    std::string to_string() const;  // always ISO-8601 YYYY-MM-DD
    int year() const;
    int month() const;
    int day() const;

    Date add_days(int n) const { return from_days(days_ + n); }
    int operator-(const Date& other) const { return days_ - other.days_; }
    std::int32_t days_since_epoch() const { return days_; }

    auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace flarko
