#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levynet {

/// Invalid parameter values (outside the documented domain).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dimension mismatch between containers that must agree.
struct shape_error : domain_error {
    using domain_error::domain_error;
};

/// Out-of-range layer / element index.
struct index_error : domain_error {
    using domain_error::domain_error;
};

/// A numerical procedure failed to converge; carries the last residual.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg, double residual_ = 0.0)
        : std::runtime_error(msg), residual(residual_) {}
    double residual;
};

/// Fixed-point iteration exceeded the overflow guard.
struct divergence_error : numerical_error {
    using numerical_error::numerical_error;
};

/// No sign change found while searching for a root bracket.
struct bracketing_error : numerical_error {
    using numerical_error::numerical_error;
};

/// Input sample unusable (e.g. all entries identical).
struct degenerate_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Jacobian-average ratio with an unusable denominator.
struct degenerate_average_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller violated a documented protocol precondition.
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File malformed or unreadable; byte_offset locates the problem when known.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg, std::size_t byte_offset_ = 0)
        : std::runtime_error(msg), byte_offset(byte_offset_) {}
    std::size_t byte_offset;
};

}  // namespace levynet
