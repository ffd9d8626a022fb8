#pragma once

#include <stdexcept>
#include <string>

namespace medlex {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented contract (bad offsets, unknown CUI,
/// out-of-range arguments). Maps to exit code 1 in the CLI.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A source file could not be parsed (malformed line, broken XML).
/// Messages carry the line number or byte offset of the failure.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Filesystem or stream failure. Maps to exit code 2 in the CLI.
class IoError : public Error {
public:
    using Error::Error;
};

/// add_mention was called with a CUI that is not in the lexicon.
class UnknownCuiError : public ValidationError {
public:
    explicit UnknownCuiError(const std::string& cui)
        : ValidationError("unknown CUI: " + cui) {}
};

} // namespace medlex
