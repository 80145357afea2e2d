#pragma once

#include <stdexcept>
#include <string>

namespace itsp {

/// Raised when TSPLIB text cannot be parsed; carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Raised by solver backends: process failures, malformed solutions,
/// exceeded instance caps.
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace itsp
