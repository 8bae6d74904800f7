#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citenet {

/// Input or parameter rejected before any work was done. The CLI maps this
/// to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A line-addressed failure while reading a text input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace citenet
