#pragma once

#include <stdexcept>
#include <string>

namespace subdirac {

// bad user input: malformed JSON, invalid dimensions, inconsistent shapes
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// operands attached to different (p, q) configurations
struct dimension_error : input_error {
    explicit dimension_error(const std::string& what) : input_error(what) {}
};

// an operation is only defined for particular dimensions (e.g. gamma5 needs m = 4)
struct unsupported_dimension_error : input_error {
    explicit unsupported_dimension_error(const std::string& what) : input_error(what) {}
};

// a requested computation exceeds the configured size budgets
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace subdirac
