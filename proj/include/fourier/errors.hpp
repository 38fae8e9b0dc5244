#pragma once

#include <stdexcept>
#include <string>

namespace fourier {

// Common base so callers can catch any library error in one handler.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameters outside the admissible set of a model or payoff.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Imaginary part of an evaluation point lies outside the required strip.
class StripViolation : public Error {
public:
    explicit StripViolation(const std::string& what) : Error(what) {}
};

// A complex log/power base landed on the principal-branch cut.
class BranchError : public Error {
public:
    explicit BranchError(const std::string& what) : Error(what) {}
};

// Finite-difference or eigensolve results are not trustworthy.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

// Inconsistent or unsupported configuration values.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// A log-space exponent grew past the representable range.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// Gamma function evaluated at a non-positive integer.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error(what) {}
};

// No strictly feasible damping vector could be located.
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// An evaluation budget cap was exceeded before the estimate completed.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(what) {}
};

} // namespace fourier
