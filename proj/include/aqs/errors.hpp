// errors.hpp: exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace aqs {

// Invalid or out-of-range configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the domain of an operation, e.g. t outside [0, T].
class DomainError : public std::out_of_range {
public:
    explicit DomainError(const std::string& what) : std::out_of_range(what) {}
};

// Quadrature failure, degenerate gap, diverging integration (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable input or unwritable output (CLI exit code 4).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace aqs
