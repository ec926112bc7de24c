#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sullivan/rational.hpp"

namespace sullivan {

// Sparse vector: entries sorted by index, no zero coefficients.
using SparseVec = std::vector<std::pair<int32_t, Rational>>;

SparseVec sv_from_map(const std::map<int32_t, Rational>& m);
std::map<int32_t, Rational> sv_to_map(const SparseVec& v);
// dst += c * src
void sv_axpy(std::map<int32_t, Rational>& dst, const SparseVec& src, const Rational& c);
SparseVec sv_scale(SparseVec v, const Rational& c);
SparseVec sv_add(const SparseVec& a, const SparseVec& b, const Rational& coeff_b = Rational(1));

// Column echelon basis over Q with optional combination tracking.
//
// Stored rows are normalized so the leading (smallest) index has coefficient 1
// and is unique across rows; all other entries sit at larger indices. Columns
// are inserted in a caller-chosen deterministic order, which fixes every basis
// this structure produces.
class Echelon {
public:
    struct Row {
        SparseVec vec;   // leading coefficient 1 at the pivot index
        SparseVec comb;  // vec == sum_j comb[j] * column_j (tracking only)
    };

    explicit Echelon(bool track = false) : track_(track) {}

    // Subtracts multiples of stored rows to clear every pivot position of v.
    // When tracking and comb != nullptr, *comb accumulates coordinates such
    // that (input v) == (residue) + sum_j comb[j] * column_j.
    SparseVec reduce(SparseVec v, std::map<int32_t, Rational>* comb = nullptr) const;

    // Inserts column `v` with id `cid`. Returns the pivot index, or
    // std::nullopt when v is dependent; in that case (tracking only)
    // *kernel_out is a combination k with sum_j k[j] * column_j == 0 and
    // k[cid] == 1.
    std::optional<int32_t> insert(SparseVec v, int32_t cid, SparseVec* kernel_out = nullptr);

    bool contains(const SparseVec& v) const;

    // Coordinates x with sum_j x[j] * column_j == b, or nullopt.
    std::optional<SparseVec> solve(const SparseVec& b) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::map<int32_t, Row>& rows() const { return rows_; }

private:
    bool track_;
    std::map<int32_t, Row> rows_;
};

}  // namespace sullivan
