#pragma once

#include <stdexcept>
#include <string>

namespace nij {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad syntax, wrong arity, chart mismatch).
class InputError : public Error {
public:
    using Error::Error;
};

/// Division by the zero field, or a zero denominator at a sample point.
class PoleError : public InputError {
public:
    using InputError::InputError;
};

/// Declared rank disagrees with the generic or sampled rank.
class RankError : public InputError {
public:
    using InputError::InputError;
};

/// A documented operation precondition does not hold.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

/// The request is well formed but outside what the library implements.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace nij
