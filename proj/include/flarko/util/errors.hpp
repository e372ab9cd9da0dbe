#pragma once

#include <stdexcept>
#include <string>

namespace flarko {

// Bad or missing configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unusable input data: missing columns, unreadable files, empty results (exit code 2).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flarko
