#pragma once

#include <stdexcept>
#include <string>

namespace stocklab {

// Bad input: malformed files, out-of-range dates, inconsistent shapes.
// Maps to exit code 1 at the CLI.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime failure: divergence, transport errors. Maps to exit code 2.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stocklab
