#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grossone {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class division_by_zero : public error {
public:
    division_by_zero() : error("division by zero") {}
};

class shape_mismatch : public error {
public:
    using error::error;
};

class singular_matrix : public error {
public:
    using error::error;
};

/// Malformed text input. `position` is the 0-based offset of the offending character.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Ill-posed problem data (e.g. rank-deficient constraint matrix).
class invalid_problem : public error {
public:
    using error::error;
};

/// A broken algorithmic invariant. Never expected on valid input.
class internal_error : public error {
public:
    using error::error;
};

class newton_divergence : public error {
public:
    using error::error;
};

/// Stationary point whose finite part violates an inequality.
class positivity_violation : public error {
public:
    using error::error;
};

} // namespace grossone
