#pragma once

#include <stdexcept>
#include <string>

namespace thermoq {

// Invalid physical or configuration input: negative temperature, x outside
// the well, non-positive length, ...
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mode index outside the range carried by the system.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Root bracket whose endpoints do not straddle a sign change.
class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File output failure (unwritable path, rename failure, ...).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature still above tolerance at maximum depth. Carries the
// best estimate so callers can decide whether it is usable anyway.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

} // namespace thermoq
