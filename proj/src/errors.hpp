#pragma once

#include <stdexcept>
#include <string>

namespace affine {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON syntax, bad number literals).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that breaks a domain rule (exhaustiveness, feasibility, references).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Bad request: unknown names, unsupported flag combinations, malformed groupings.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input exceeds the exact-enumeration caps of the oracle.
class SizeError : public UsageError {
public:
    using UsageError::UsageError;
};

}  // namespace affine
