#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvetower {

// Caller supplied input that violates an operation's preconditions.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public PreconditionError {
public:
    ParseError(const std::string& what, std::size_t position)
        : PreconditionError(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A computation ran out of its level or enumeration budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotStabilized : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace curvetower
