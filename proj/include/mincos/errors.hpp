#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mincos {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-conforming shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A Frobenius norm that should be positive fell below the degeneracy threshold.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// The exact line-search steplength has a vanishing denominator.
class StagnationError : public Error {
public:
    using Error::Error;
};

/// Malformed Matrix Market input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace mincos
