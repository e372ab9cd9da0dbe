#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace flarko {

// Shortest round-trip decimal rendering; parse(format(x)) == x bit-exactly.
inline std::string format_decimal(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::optional<double> parse_decimal(std::string_view text) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return out;
}

}  // namespace flarko
