#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Input outside the domain of an operation (point not in the half-plane,
/// disk touching the real axis, radius out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation left the range of double precision (overflowing
/// derivatives, non-finite matrix entries).
class NumericRangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Malformed measure description, experiment configuration or CLI input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Broken internal invariant of the symbolic calculus.
class CalculusError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bergman
