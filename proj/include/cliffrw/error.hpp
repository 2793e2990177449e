#pragma once

#include <stdexcept>
#include <string>

namespace cliffrw {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural violation of a gate or circuit invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A match was produced against a different revision or no longer applies.
class StaleMatchError : public Error {
public:
    using Error::Error;
};

/// The match is only valid when barriers are treated as transparent.
class BarrierViolationError : public Error {
public:
    using Error::Error;
};

class NotMergeableError : public Error {
public:
    using Error::Error;
};

/// Ancilla severing refused because its precondition cannot be established.
class SeverError : public Error {
public:
    using Error::Error;
};

class NonCliffordError : public Error {
public:
    using Error::Error;
};

class SizeLimitError : public Error {
public:
    using Error::Error;
};

class BudgetExceededError : public Error {
public:
    using Error::Error;
};

}  // namespace cliffrw
