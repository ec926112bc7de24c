#include "sullivan/matrix.hpp"

#include "sullivan/error.hpp"

namespace sullivan {

ScalarMatrix ScalarMatrix::identity(int n) {
    ScalarMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RrefResult rref(const ScalarMatrix& m) {
    ScalarMatrix a = m;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int p = -1;
        for (int r = row; r < a.rows(); ++r) {
            if (!a.at(r, col).is_zero()) {
                p = r;
                break;
            }
        }
        if (p < 0) continue;
        if (p != row) {
            for (int c = 0; c < a.cols(); ++c) std::swap(a.at(p, c), a.at(row, c));
        }
        Rational inv = Rational(1) / a.at(row, col);
        for (int c = col; c < a.cols(); ++c) a.at(row, c) *= inv;
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            Rational f = a.at(r, col);
            for (int c = col; c < a.cols(); ++c) a.at(r, c) -= f * a.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

std::vector<std::vector<Rational>> kernel_basis(const ScalarMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_columns) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(m.cols());
        x[free] = Rational(1);
        for (size_t i = 0; i < r.pivot_columns.size(); ++i) {
            // row i of the reduced matrix reads: x[pivot_i] + sum over free cols = 0
            x[r.pivot_columns[i]] = -r.reduced.at(int(i), free);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const ScalarMatrix& m, const std::vector<Rational>& b) {
    if (int(b.size()) != m.rows()) throw Error("solve: right-hand side length mismatch");
    ScalarMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    RrefResult red = rref(aug);
    for (int c : red.pivot_columns) {
        if (c == m.cols()) return std::nullopt;  // pivot in the augmented column
    }
    std::vector<Rational> x(m.cols());
    for (size_t i = 0; i < red.pivot_columns.size(); ++i) {
        x[red.pivot_columns[i]] = red.reduced.at(int(i), m.cols());
    }
    return x;
}

}  // namespace sullivan
