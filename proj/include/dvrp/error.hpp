#pragma once

#include <stdexcept>
#include <string>

namespace dvrp {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed instance text. Line numbers are 1-based; 0 means unknown.
struct ParseError : Error {
    ParseError(int line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    explicit ParseError(const std::string& what) : Error(what), line(0) {}
    int line;
};

// The instance admits no feasible solution.
struct InfeasibleError : Error {
    using Error::Error;
};

// An exact integer or rational value left the representable range.
struct OverflowError : Error {
    using Error::Error;
};

// A caller violated a documented precondition.
struct ContractError : Error {
    using Error::Error;
};

}  // namespace dvrp
