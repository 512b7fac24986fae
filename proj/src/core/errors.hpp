#pragma once

#include <stdexcept>
#include <string>

namespace bhc {

// Config/file could not be parsed against the schema.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parsed fine, but an invariant is violated.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation exceeds a capacity guard.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-convergence, degenerate eigenvalues, singularities.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Operation applied outside its domain (e.g. states from different manifolds).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bhc
