#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpa {

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A self-check inside the library failed; indicates a bug or a falsified bound.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed grammar, string literal, proof block or transcript.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Grammar violates a structural invariant (dead nonterminals, empty sets).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bpa
