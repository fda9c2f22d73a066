#pragma once

#include <stdexcept>
#include <string>

namespace picalc {

/// Malformed input text, located at a 1-based line and column.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Well-formed text that violates a static rule (arity, unbound identifier,
/// mode restriction), or an engine failure such as the unfolding guard.
class SemanticsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace picalc
