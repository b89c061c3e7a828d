#pragma once

#include <stdexcept>
#include <string>

namespace ctrlk {

/// Malformed input document or unparseable number.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structural misuse: dimension mismatch, index out of range, bad flags.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition does not hold for the given input.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ctrlk
