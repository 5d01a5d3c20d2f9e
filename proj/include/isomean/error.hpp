#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isomean {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left the natural domain of an expression.
class DomainError : public Error {
public:
    enum class Kind { OutOfDomain, Pole, Overflow };

    DomainError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A generator map failed strict-monotonicity verification.
class NotMonotoneError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// An improper integral (or endpoint-limit sequence) did not converge.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// A theorem-derived verdict disagreed with the numeric values of both means.
class ContradictionError : public Error {
public:
    using Error::Error;
};

} // namespace isomean
