#pragma once

#include <stdexcept>
#include <string>

namespace carbongrid {

/// Malformed input text (case files, CSV, JSON documents).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Inconsistent network structure (dangling references, disconnected graph).
class StructuralError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown fuel code or metric name.
class TaxonomyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fuel dictionary does not cover every generator.
class CoverageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Singular matrices, factorization failures, iteration limits.
class NumericalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Singular active-constraint basis at a degenerate optimum.
class DegeneracyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (dimension mismatch etc.).
class ContractError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem and serialization failures.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Persisted table does not match the network it is queried against.
class StaleTableError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Persisted document failed its integrity check.
class ChecksumError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested feature is intentionally not supported.
class UnsupportedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A posted price matches no region, or more than one.
class AmbiguityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Propagated when an operation needs an Optimal dispatch but the instance
/// is infeasible.
class InfeasibleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace carbongrid
