#pragma once

#include <stdexcept>
#include <string>

namespace mesoent {

/// Base of every error raised by the library. `numerical()` separates
/// numerical/convergence failures (CLI exit 1) from contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, bool numerical = false)
        : std::runtime_error(what), numerical_(numerical) {}
    bool numerical() const noexcept { return numerical_; }

private:
    bool numerical_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Input fails a structural check (Hermiticity, symmetry, finiteness, range).
class ValidityError : public Error {
public:
    explicit ValidityError(const std::string& what) : Error(what) {}
};

/// Kossakowski matrix not positive semidefinite (lambda^2 > 1).
class CompletePositivityError : public Error {
public:
    explicit CompletePositivityError(const std::string& what) : Error(what) {}
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, long step) : Error(what, true), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// The Lindblad image of a basis observable left the six-dimensional span.
class SpanClosureError : public Error {
public:
    SpanClosureError(const std::string& what, double residual)
        : Error(what, true), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Two independent computations that must agree did not.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(what, true) {}
};

/// Thermal weight near the Fock cutoff is too large; raise n_max.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double tail_mass)
        : Error(what, true), tail_mass_(tail_mass) {}
    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what, true) {}
};

class BracketError : public Error {
public:
    explicit BracketError(const std::string& what) : Error(what, true) {}
};

/// Sampling grid too coarse to bracket a sign change.
class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& what) : Error(what, true) {}
};

}  // namespace mesoent
