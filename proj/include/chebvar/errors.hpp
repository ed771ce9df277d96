#pragma once

#include <stdexcept>
#include <string>

namespace chebvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic would exceed the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// The prime divides the discriminant of the defining polynomial.
class RamifiedPrimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A memory or work budget would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace chebvar
