#pragma once

#include <stdexcept>
#include <string>

namespace alphagrid {

// Input text that does not conform to the matrix-text grammar.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Shape mismatches: permutation length, operand dimensions, and the like.
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside the documented domain of an operation (k out of range,
// family evaluated below its validity threshold, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance larger than an operation's hard size guard.
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a precondition that is cheap to detect (empty row subset,
// invalid permutation, ...).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace alphagrid
