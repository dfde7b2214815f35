#pragma once

#include <stdexcept>
#include <string>

namespace autoplan {

// Bad user-facing configuration (flags, config file, missing paths). Exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (scene files, measurements, empty
// candidate sets). Exit code 3.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (non-finite loss, factorization breakdown). Exit code 4.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace autoplan
