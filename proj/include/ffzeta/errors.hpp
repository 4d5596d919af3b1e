#pragma once

#include <stdexcept>
#include <string>

namespace ffzeta {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Construction and validation failures.

class NotPrimeError : public Error {
public:
    using Error::Error;
};

class NotIrreducibleError : public Error {
public:
    using Error::Error;
};

class DegreeMismatchError : public Error {
public:
    using Error::Error;
};

/// An explicit implementation cap was exceeded (extension degree, field size,
/// enumeration size, intermediate object size).
class LimitError : public Error {
public:
    using Error::Error;
};

class SingularModelError : public Error {
public:
    using Error::Error;
};

class SequenceTooShortError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class BadBaseError : public Error {
public:
    using Error::Error;
};

// Arithmetic failures.

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class FieldMismatchError : public Error {
public:
    using Error::Error;
};

class EmptyWindowError : public Error {
public:
    using Error::Error;
};

class NotInvertibleError : public Error {
public:
    using Error::Error;
};

class PrecisionTooSmallError : public Error {
public:
    using Error::Error;
};

// Resource and engine failures.

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

class PrecisionEscalationError : public Error {
public:
    using Error::Error;
};

class CutoffTooSmallError : public Error {
public:
    using Error::Error;
};

// Input parsing failures (files, literals, CLI arguments).

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace ffzeta
