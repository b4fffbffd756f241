#pragma once

#include <stdexcept>
#include <string>

namespace spiroplanck {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A derived probability would leave [0, 1] (range too large for the field).
class RangeError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Configuration could not be resolved; the message names the offending key.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Malformed input data; the message names the row and column.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace spiroplanck
