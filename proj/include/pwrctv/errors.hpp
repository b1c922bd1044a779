#pragma once

#include <stdexcept>
#include <string>

namespace pwrctv {

// Bad user input: malformed files, dimension mismatches, invalid parameters.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown: non-finite iterates, degenerate decompositions.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pwrctv
