#pragma once

#include <stdexcept>
#include <string>

namespace dmxyz {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix handed to a Hermitian-only routine failed the Hermiticity check.
class NotHermitian final : public Error {
public:
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

/// The Jacobi iteration did not reach its off-diagonal tolerance within the
/// sweep budget.
class NoConvergence final : public Error {
public:
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

/// A matrix required to be positive semidefinite has an eigenvalue below the
/// clamp floor.
class NotPositiveSemidefinite final : public Error {
public:
    explicit NotPositiveSemidefinite(const std::string& what) : Error(what) {}
};

/// A purported density matrix failed its trace / Hermiticity / PSD checks.
class InvalidDensityMatrix final : public Error {
public:
    explicit InvalidDensityMatrix(const std::string& what) : Error(what) {}
};

/// The requested closed form does not exist for this DM axis.
class UnsupportedAxis final : public Error {
public:
    explicit UnsupportedAxis(const std::string& what) : Error(what) {}
};

/// A Boltzmann exponent exceeded the floating-point budget even after
/// max-shift normalization.
class Overflow final : public Error {
public:
    explicit Overflow(const std::string& what) : Error(what) {}
};

/// Figure identifier outside 1..6.
class UnknownFigure final : public Error {
public:
    explicit UnknownFigure(const std::string& what) : Error(what) {}
};

}  // namespace dmxyz
