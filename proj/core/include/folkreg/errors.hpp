#pragma once

#include <stdexcept>
#include <string>

namespace folkreg {

// Bad arguments to an operation (empty sets, overlapping sets, bad indices).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation was invoked on an object in the wrong state (missing coloring,
// missing pair verdicts, incomplete embedding).
class StateError : public std::logic_error {
public:
    explicit StateError(const std::string& what) : std::logic_error(what) {}
};

// The instance is too large for an exact mode; the caller must switch modes.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// No admissible value exists (no proper coloring, no feasible epsilon, ...).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries "<file>:<line>: <reason>".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& reason)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + reason) {}
};

} // namespace folkreg
