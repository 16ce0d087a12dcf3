#pragma once

#include <stdexcept>
#include <string>

namespace edm_emu {

/// Input failed a precondition check (non-finite values, non-Hermitian matrix,
/// unnormalized state, bad time grid, dimension mismatch).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the domain where a closed form applies.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scenario configuration is malformed or inconsistent.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a result (e.g. no spectral peak).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace edm_emu
