#include "flarko/util/date.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace flarko {

namespace {

// Civil-calendar conversions (Howard Hinnant's algorithms).
std::int32_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int32_t>(doe) - 719468;
}

void civil_from_days(std::int32_t z, int& y, int& m, int& d) {
    z += 719468;
    const int era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

bool is_leap(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<size_t>(m - 1)];
}

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Date Date::from_ymd(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
        throw std::invalid_argument("invalid date components");
    }
    return from_days(days_from_civil(year, month, day));
}

std::optional<Date> Date::try_parse(std::string_view text) {
    // Drop a time-of-day suffix if present.
    if (auto cut = text.find_first_of("T "); cut != std::string_view::npos) {
        text = text.substr(0, cut);
    }
    const auto dash1 = text.find('-');
    if (dash1 == std::string_view::npos) return std::nullopt;
    const auto dash2 = text.find('-', dash1 + 1);
    if (dash2 == std::string_view::npos) return std::nullopt;

    int y = 0, m = 0, d = 0;
    if (!parse_int(text.substr(0, dash1), y) ||
        !parse_int(text.substr(dash1 + 1, dash2 - dash1 - 1), m) ||
        !parse_int(text.substr(dash2 + 1), d)) {
        return std::nullopt;
    }
    if (dash1 != 4 || y < 0 || m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
        return std::nullopt;
    }
    return from_days(days_from_civil(y, m, d));
}

Date Date::parse(std::string_view text) {
    if (auto d = try_parse(text)) return *d;
    throw std::invalid_argument("unparseable date: '" + std::string(text) + "'");
}

std::string Date::to_string() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

int Date::year() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return y;
}

int Date::month() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return m;
}

int Date::day() const {
    int y, m, d;
    civil_from_days(days_, y, m, d);
    return d;
}

}  // namespace flarko
