#pragma once

#include <stdexcept>
#include <string>

namespace fallkolor {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied parameters outside an operation's domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Checked integer arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A configured size or enumeration budget would be exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A construction produced a coloring that failed post-verification.
/// The message carries the verifier's witness.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// The reconstructed star-extension recipe did not verify on this instance.
class RecipeUnverified : public ConstructionError {
public:
    using ConstructionError::ConstructionError;
};

}
