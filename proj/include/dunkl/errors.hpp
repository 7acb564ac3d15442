#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Argument outside the mathematical domain of an operation (x <= 0 for ln Gamma, y <= 0, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A series or iteration did not reach its tolerance within the allowed work.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: overflow, caustic, divergent propagation.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dunkl
