#ifndef CMOPBENCH_ERRORS_HPP
#define CMOPBENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cmopbench {

/// Base class for all library errors. `kind()` returns a stable,
/// machine-readable tag used by the CLI error summary.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Invalid configuration value (bad bounds, unsupported objective count, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

/// Input outside the mathematical domain of an operation (NaN, out-of-box x).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

/// Operation invoked on a state that does not satisfy its precondition
/// (empty archive, no evaluations ingested).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message) : Error("precondition", message) {}
};

/// Name not present in a registry.
class LookupError : public Error {
public:
    explicit LookupError(const std::string& message) : Error("lookup", message) {}
};

/// Name already present in a registry.
class ConflictError : public Error {
public:
    explicit ConflictError(const std::string& message) : Error("conflict", message) {}
};

/// Out-of-order evaluation indices or unsorted traces.
class SequenceError : public Error {
public:
    explicit SequenceError(const std::string& message) : Error("sequence", message) {}
};

/// Structurally incompatible inputs (mismatched target counts or run counts).
class MismatchError : public Error {
public:
    explicit MismatchError(const std::string& message) : Error("mismatch", message) {}
};

/// Filesystem / parsing problems while reading or writing a result store.
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

} // namespace cmopbench

#endif
