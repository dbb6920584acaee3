#pragma once

#include <stdexcept>
#include <string>

namespace ihbag {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV cells, config values).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input that parses but violates a precondition or invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Feature or weight dimensions that do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

} // namespace ihbag
