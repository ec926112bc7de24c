#pragma once

#include <stdexcept>
#include <string>

namespace sullivan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request past the algebra's degree cap.
struct CapError : Error {
    using Error::Error;
};

// Operands from different algebras.
struct AlgebraMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

struct SchemaError : Error {
    std::string path;  // JSON path of the offending value
    SchemaError(const std::string& msg, std::string path_)
        : Error(msg + " at " + path_), path(std::move(path_)) {}
};

// A broken internal invariant; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace sullivan
