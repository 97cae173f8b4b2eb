#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlmp {

/// An argument lies outside the domain of an operation (unknown state, non-subset, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition does not hold (non-symmetric relation, invalid model, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but the configuration is outside what the tool supports.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax or semantic error in a model or formula text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)), message_(message), line_(line), column_(column) {}

    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& m, std::size_t line, std::size_t column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + m;
    }

    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace nlmp
