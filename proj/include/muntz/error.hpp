#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace muntz {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (t ∉ [0,1], α ≤ 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Too little input to define the quantity (fewer than two exponents, K < 3, ...).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// A caller-side contract was violated (e.g. an exponent sequence fails the Müntz condition).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A function returned a non-finite value during sampling.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A numerical tolerance could not be reached; carries the best estimate found.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate)
        : Error(what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

/// Requested index beyond a truncation (partial sum past K, ...).
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Summation matrix row is missing or malformed.
class MatrixError : public Error {
public:
    using Error::Error;
};

/// Division by a zero ψ(k) at an active harmonic.
class DivisionError : public Error {
public:
    DivisionError(const std::string& what, int harmonic) : Error(what), harmonic_(harmonic) {}
    int harmonic() const noexcept { return harmonic_; }

private:
    int harmonic_;
};

/// Mismatched shapes between a polynomial and a plan, or between chained plans.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A spanning set is rank deficient where independence is required.
class RankError : public Error {
public:
    using Error::Error;
};

/// The LP solver failed; carries a short iteration trace.
class OptimizationError : public Error {
public:
    OptimizationError(const std::string& what, std::vector<std::string> trace)
        : Error(what), trace_(std::move(trace)) {}
    const std::vector<std::string>& trace() const noexcept { return trace_; }

private:
    std::vector<std::string> trace_;
};

}  // namespace muntz
