#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plateaulab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands have incompatible or invalid dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input violates a Hermiticity requirement.
class HermiticityError : public Error {
public:
    using Error::Error;
};

/// Relative entropy diverges: rho has weight outside the support of sigma.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Spectrum too degenerate for a gap-sensitive formula.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Numerical failure (non-finite values, failed convergence).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration; carries one message per violation.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid configuration:";
        for (const auto& s : issues) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

/// File or directory I/O failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace plateaulab
