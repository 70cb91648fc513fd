#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivvi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An interval endpoint left the finite reals, or an interval was built with lo > hi.
class ArithmeticRangeError : public Error {
public:
    using Error::Error;
};

class InvalidIntervalError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// Expression text did not match the grammar. `position` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownVariableError : public ParseError {
public:
    using ParseError::ParseError;
};

class BadArityError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Evaluation left the domain of a primitive (log of a non-positive value).
class DomainError : public Error {
public:
    using Error::Error;
};

/// More active selections than the combination cap allows.
class SelectionCapError : public Error {
public:
    using Error::Error;
};

/// Grid would exceed the point budget.
class GridCapError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

/// A loaded problem breaks lower <= upper at some grid point.
class BoundOrderError : public Error {
public:
    using Error::Error;
};

class OutOfDomainError : public Error {
public:
    using Error::Error;
};

class UnknownCheckerError : public Error {
public:
    using Error::Error;
};

}  // namespace ivvi
