#pragma once

/**
 * @file error.hpp
 * @brief Exception types shared by the simpson library.
 *
 * Each failure mode named in the library contract has its own type so that
 * callers (notably the CLI exit-code mapping) can dispatch on it.
 */

#include <stdexcept>
#include <string>

namespace simpson {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
public:
    using Error::Error;
};

class DivisionByZeroToPrecision : public Error {
public:
    using Error::Error;
};

class OutsideExpDomain : public Error {
public:
    using Error::Error;
};

class OutsideLogDomain : public Error {
public:
    using Error::Error;
};

class OutsideRepresentableDomain : public Error {
public:
    using Error::Error;
};

class ZeroResidue : public Error {
public:
    using Error::Error;
};

/// A rank or zero decision could not be made reliably at the working precision.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class IntegralStructureFailure : public Error {
public:
    using Error::Error;
};

class NotConnected : public Error {
public:
    using Error::Error;
};

class NotAUnit : public Error {
public:
    using Error::Error;
};

/// A connected algebra whose reduced quotient is a proper field extension of Q_p.
class NonSplitResidue : public Error {
public:
    using Error::Error;
};

class NotSurjective : public Error {
public:
    using Error::Error;
};

class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class CommutationFailure : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace simpson
