#pragma once

#include <stdexcept>
#include <string>

namespace cosetsum {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when exact and floating-point coefficients meet in one operation.
class ScalarKindMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A documented precondition of a construction (refinement, interpolatory,
/// biorthogonal, symmetric, ...) does not hold for the given input.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class SupportLimitExceeded : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace cosetsum
