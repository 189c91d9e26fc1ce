#pragma once

#include <stdexcept>
#include <string>

namespace wns {

/// Contract violation in user-supplied data (shape/basis mismatch, bad JSON field, ...).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numeric failure during an otherwise well-formed computation (singular pivot, pole, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wns
