#pragma once

#include <stdexcept>
#include <string>

namespace jlb {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An argument fell outside the open domain of a function, CGF, or density.
struct DomainError : Error {
    using Error::Error;
};

// Structurally invalid configuration: bad grid, bad probability table,
// non-positive parameter where a positive one is required, and so on.
struct ConfigError : Error {
    using Error::Error;
};

// A mathematical precondition of a bound was violated (wrong curvature,
// moment out of range, unsupported exponent combination).
struct PreconditionError : Error {
    using Error::Error;
};

// Every grid point of an optimization was infeasible.
struct InfeasibleError : Error {
    using Error::Error;
};

// An independent-oracle computation could not reach its target accuracy
// (missing tail bound, non-finite integrand, budget exhausted).
struct OracleError : Error {
    using Error::Error;
};

// A bound object was queried for a value its validity flags disqualify.
struct ValidityError : Error {
    using Error::Error;
};

// A parameter combination sits at or past a pole of the underlying
// moment generating function.
struct SingularityError : Error {
    using Error::Error;
};

}  // namespace jlb
