#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poracle {

/// Requested state or matrix does not fit the configured memory budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense verification requested above the supported dimension.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Bad qubit index, width mismatch, overlapping registers and similar misuse.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A shift type whose GF(2) matrix has no inverse.
class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace poracle
