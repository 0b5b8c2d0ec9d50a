#pragma once

#include <stdexcept>
#include <string>

namespace qcluster {

/// Input outside the mathematical/physical domain of an operation
/// (flux out of [0, 1/2], bias ratio >= 1, N < 2, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// API contract broken by the caller (basis flag mismatch, non-diagonal
/// term list on the diagonal fast path, mismatched dimensions).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Qubit count exceeds a configured memory/CPU guard.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, int n_requested, int guard)
        : std::runtime_error(what), n_requested(n_requested), guard(guard) {}
    int n_requested;
    int guard;
};

/// Numerical routine failed to converge; message carries diagnostics.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration document failed schema validation; `pointer` is a JSON
/// pointer to the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string pointer)
        : std::runtime_error(what + " (at " + pointer + ")"), pointer(std::move(pointer)) {}
    std::string pointer;
};

} // namespace qcluster
