// error.hpp: exception types shared by every module.

#pragma once

#include <stdexcept>

namespace dicke {

// An argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Integrator, quadrature or eigensolver could not deliver the requested accuracy.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that carries no information to normalise against (all-zero kernels, empty mode sets).
class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace dicke
