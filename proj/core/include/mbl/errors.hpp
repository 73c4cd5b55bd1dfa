#pragma once

#include <stdexcept>
#include <string>

namespace mbl {

/// Bad input: parameters, manifests, preconditions. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// NaN/Inf, CFL violation, failed quadrature, zero pivot. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable manifest or unwritable output. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mbl
