#pragma once

#include <stdexcept>
#include <string>

namespace projprod {

// Incompatible tensor/matrix dimensions.
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Slice/tube index outside the tensor.
struct bounds_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Parameter outside its documented range (k, p, gamma, mode, ...).
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input that is structurally valid but numerically unusable
// (singular transform, rank-deficient basis, zero reference tensor).
struct degenerate_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite values where finite ones are required.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or truncated container file.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace projprod
