#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxhom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A configured size budget (coset rows, elements, simplices, subsets) was exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An operation was applied outside its domain (e.g. an infinite group where a finite one is required).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed: a computed object violates a proven property.
class ContractViolation : public Error {
public:
    using Error::Error;
};

}  // namespace coxhom
