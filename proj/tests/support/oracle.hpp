#pragma once

// Independent brute-force oracles for the test suites. Deliberately separate
// from the production linear algebra: plain fraction-free elimination over a
// dense array, no pivoting strategy shared with the library.

#include <vector>

#include "sullivan/rational.hpp"

namespace testsupport {

inline int oracle_rank(std::vector<std::vector<sullivan::Rational>> a) {
    using sullivan::Rational;
    int rows = int(a.size());
    if (rows == 0) return 0;
    int cols = int(a[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (!a[r][c].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            Rational f = a[r][c] / a[rank][c];
            for (int k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace testsupport
