#ifndef EISLAB_ERRORS_HPP
#define EISLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eislab {

// Error taxonomy mirrored by the CLI exit codes: input/validation problems
// exit 2, numerical-precision problems exit 3.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : InputError {
    using InputError::InputError;
};
struct RangeError : InputError {
    using InputError::InputError;
};
struct ParseError : InputError {
    using InputError::InputError;
};
struct ValidationError : InputError {
    using InputError::InputError;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : NumericalError {
    using NumericalError::NumericalError;
};
struct TruncationError : NumericalError {
    using NumericalError::NumericalError;
};
struct QuadratureError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace eislab

#endif
