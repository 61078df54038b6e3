#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iarq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated an operation's preconditions (empty inputs, mismatched sizes).
class UsageError : public Error {
public:
    using Error::Error;
};

/// A configuration value is outside its valid domain.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Rejected input data (non-finite features, labels out of range).
class InputError : public Error {
public:
    using Error::Error;
};

class DegenerateChannelError : public Error {
public:
    using Error::Error;
};

class InsufficientClassesError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class UntrainedModelError : public Error {
public:
    using Error::Error;
};

class InvalidPosteriorError : public Error {
public:
    using Error::Error;
};

/// Malformed binary input; carries the byte offset where parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace iarq
