#pragma once

#include <stdexcept>
#include <string>

namespace vet {

// Argument outside the domain of a formula (log singularity, bad separation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An expression that should be real carried a non-negligible imaginary part.
class NonRealError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Partial-transpose symplectic spectrum is not real and positive. The squared
// eigenvalues are kept so callers can still report magnitudes.
class SpectrumError : public std::runtime_error {
public:
    SpectrumError(const std::string& what, double nu_minus_magnitude, double nu_plus_magnitude)
        : std::runtime_error(what), nu_minus_magnitude_(nu_minus_magnitude),
          nu_plus_magnitude_(nu_plus_magnitude) {}

    double nu_minus_magnitude() const noexcept { return nu_minus_magnitude_; }
    double nu_plus_magnitude() const noexcept { return nu_plus_magnitude_; }

private:
    double nu_minus_magnitude_;
    double nu_plus_magnitude_;
};

class AsymmetricStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OverlapError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace vet
