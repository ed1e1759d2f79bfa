#pragma once

#include <stdexcept>
#include <string>

namespace ckg {

// Root of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NotPsd : public Error {
public:
    using Error::Error;
};

// The family fails the lower c-K-g-frame inequality (range test or invertibility).
class NotAFrame : public Error {
public:
    using Error::Error;
};

class DegenerateDual : public Error {
public:
    using Error::Error;
};

class InvalidPair : public Error {
public:
    using Error::Error;
};

class InadmissibleParams : public Error {
public:
    using Error::Error;
};

class InvalidDelta : public Error {
public:
    using Error::Error;
};

// Precondition violation on an otherwise well-typed argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Input errors: malformed files or scenario parameters. The CLI maps these to exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace ckg
