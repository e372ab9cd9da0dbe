#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace flarko {

// ISIN shape: two letters, nine alphanumerics, one digit.
inline bool is_valid_isin(std::string_view s) {
    if (s.size() != 12) return false;
    const auto upper = [](char c) { return c >= 'A' && c <= 'Z'; };
    const auto alnum = [&](char c) { return upper(c) || (c >= '0' && c <= '9'); };
    if (!upper(s[0]) || !upper(s[1])) return false;
    for (std::size_t i = 2; i < 11; ++i) {
        if (!alnum(s[i])) return false;
    }
    return s[11] >= '0' && s[11] <= '9';
}

// All ISIN-shaped tokens in text, in order of appearance. Matches must not
// be flanked by alphanumerics, so ISINs embedded in longer tokens are skipped.
inline std::vector<std::string> extract_isin_tokens(std::string_view text) {
    std::vector<std::string> out;
    const auto alnum = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    };
    for (std::size_t i = 0; i + 12 <= text.size(); ++i) {
        if (i > 0 && alnum(text[i - 1])) continue;
        if (i + 12 < text.size() && alnum(text[i + 12])) continue;
        auto candidate = text.substr(i, 12);
        if (is_valid_isin(candidate)) {
            out.emplace_back(candidate);
            i += 11;
        }
    }
    return out;
}

}  // namespace flarko
