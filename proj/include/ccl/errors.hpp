#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ccl {

// Bad argument: wrong dimension, out-of-range parameter, malformed input.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation outside the set where a function is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// An internal guarantee failed, e.g. a bisection that does not bracket.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// A numerical procedure did not converge; carries the values it saw.
struct DiagnosticError : std::runtime_error {
    DiagnosticError(const std::string& what, std::vector<double> tail)
        : std::runtime_error(what), tail(std::move(tail)) {}
    std::vector<double> tail;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace ccl
