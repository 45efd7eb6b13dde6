#pragma once

#include <stdexcept>
#include <string>

namespace refmatch {

// Input data problems (malformed files, dangling ids, schema mismatch). CLI maps these to exit 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration (unknown field names, invalid parameter ranges). CLI maps these to exit 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace refmatch
