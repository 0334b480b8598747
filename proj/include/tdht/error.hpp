#pragma once

#include <stdexcept>
#include <string>

namespace tdht {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A candidate modulus polynomial failed the multiplicative-order test.
class NotPrimitiveError : public Error {
public:
    using Error::Error;
};

/// Requested extension degree outside the supported table range.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// 0^e with e <= 0.
class ZeroToNonpositiveError : public Error {
public:
    using Error::Error;
};

/// Checked integer arithmetic overflowed.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Operation requires an odd extension degree n = 2m+1.
class BadDegreeError : public Error {
public:
    using Error::Error;
};

/// Second decimation t must be coprime to 3^n - 1.
class BadTError : public Error {
public:
    using Error::Error;
};

/// First decimation v must satisfy gcd(v, 3^n - 1) > 1 on this path.
class BadVError : public Error {
public:
    using Error::Error;
};

/// The all-ones ternary word has no run decomposition.
class AllOnesError : public Error {
public:
    using Error::Error;
};

/// The pair (v, t) fails the weight criterion.
class NotRealizableError : public Error {
public:
    using Error::Error;
};

/// No unit in {1, 2} reconciles the closed-form realization with the
/// exact spectrum.
class CalibrationMismatchError : public Error {
public:
    using Error::Error;
};

/// Congruence bookkeeping for the realized sequence has no solution.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

/// Unrecognized report output format.
class UnknownFormatError : public Error {
public:
    using Error::Error;
};

}  // namespace tdht
