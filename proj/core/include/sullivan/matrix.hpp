#pragma once

#include <optional>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

// Dense matrix of exact rationals. Row-major.
class ScalarMatrix {
public:
    ScalarMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
    static ScalarMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return e_[size_t(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }

    friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    int rows_, cols_;
    std::vector<Rational> e_;
};

struct RrefResult {
    ScalarMatrix reduced;
    std::vector<int> pivot_columns;
};

// Gauss-Jordan with deterministic pivot choice: columns left to right, pivot is
// the first row (top-down) with a nonzero entry.
RrefResult rref(const ScalarMatrix& m);

// Basis of { x : m x = 0 }. Each free column contributes one vector, with the
// free variable set to 1; dimension equals cols - rank.
std::vector<std::vector<Rational>> kernel_basis(const ScalarMatrix& m);

// A particular solution of m x = b, or nullopt when b is outside the image.
// NoSolution is a value, not a fault.
std::optional<std::vector<Rational>> solve(const ScalarMatrix& m, const std::vector<Rational>& b);

}  // namespace sullivan
