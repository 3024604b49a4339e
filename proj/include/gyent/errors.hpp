#pragma once

#include <stdexcept>
#include <string>

namespace gyent {

/// Base of every error the engine raises. `exit_code()` is what the CLI returns.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// Malformed or out-of-range input (dimension mismatch, bad config, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A size guard refused to allocate.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Root refinement did not reach the requested accuracy.
class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// A mathematical contract failed (expected collapse, commutation, ...).
class ContractError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

} // namespace gyent
