#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace intermap {

using cdouble = std::complex<double>;
using StateVector = std::vector<cdouble>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or arguments (CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A numerical self-check failed, e.g. a unitarity or symmetry residual
/// above tolerance (CLI exit code 3).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// File format / IO problems (bad magic, version mismatch, short read).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

std::string version_string();

}  // namespace intermap
