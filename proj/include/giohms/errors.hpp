#pragma once

#include <stdexcept>
#include <string>

namespace giohms {

/// Invalid or inconsistent configuration values (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable or malformed input data, including violated operation
/// preconditions such as a vertex id that is not in the graph (exit code 3).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem instance exceeds a hard resource bound (exit code 4).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace giohms
