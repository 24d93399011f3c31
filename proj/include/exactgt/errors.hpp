#pragma once

#include <stdexcept>
#include <string>

namespace exactgt {

// Invalid mathematical input: wrong parity, mismatched field parameters,
// out-of-range coordinates, singular matrix where an invertible one is needed.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Input is valid but the computation exceeds a configured bound.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Dimension outside the encoded data range.
class UnsupportedDimension : public DomainError {
public:
    explicit UnsupportedDimension(const std::string& what) : DomainError(what) {}
};

// Structured-text input could not be parsed. line() is 1-based when the
// input came from a file, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace exactgt
