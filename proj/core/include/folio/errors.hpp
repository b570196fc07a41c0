#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folio {

/// Base class for all folio errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file: bad CSV syntax, unparsable field, missing header.
/// Carries the 1-based line number when known (0 = whole file).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a domain invariant (non-positive price,
/// wrong return kind, too few observations).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Structural data problems: empty date intersection, misaligned series,
/// a target date outside the risk-free coverage.
class DataError : public Error {
public:
    using Error::Error;
};

/// Out-of-range or inconsistent arguments.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Matrix not positive definite even after the ridge retry.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Degenerate problem instance: equal-means frontier, tied tail order
/// statistics, undefined tangency.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Constraint set admits no solution.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Ratio denominator vanished or has the wrong sign.
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

/// Not enough positive tail observations for a Hill estimate.
class InsufficientTailError : public Error {
public:
    using Error::Error;
};

} // namespace folio
