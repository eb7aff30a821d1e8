#pragma once

#include <stdexcept>
#include <string>

namespace vsec {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed configuration; `path` names the offending field (e.g. "protocol.thresholds[1].from_mps").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// A numerical procedure failed to meet its stopping rule.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sparse recovery produced a rank-deficient support.
class RecoveryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoRelayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vsec
