#pragma once

#include <stdexcept>
#include <string>

namespace wkc {

// Malformed input text or files. CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::string source, int line, int column)
        : std::runtime_error(format(message, source, line, column)),
          message_(std::move(message)), source_(std::move(source)),
          line_(line), column_(column) {}

    explicit ParseError(std::string message)
        : std::runtime_error(message), message_(std::move(message)), line_(0), column_(0) {}

    // The bare description, without the source location prefix of what().
    const std::string& message() const { return message_; }
    const std::string& source() const { return source_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& message, const std::string& source,
                              int line, int column) {
        std::string where = source.empty() ? "input" : source;
        return where + ":" + std::to_string(line) + ":" + std::to_string(column) +
               ": " + message;
    }

    std::string message_;
    std::string source_;
    int line_;
    int column_;
};

// Violated operation precondition or domain-level failure (contradictory term,
// oversized oracle scope, weight overflow, ...). CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(std::string message) : std::runtime_error(std::move(message)) {}
};

} // namespace wkc
