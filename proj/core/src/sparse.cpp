#include "sullivan/sparse.hpp"

#include <queue>
#include <unordered_map>

namespace sullivan {

SparseVec sv_from_map(const std::map<int32_t, Rational>& m) {
    SparseVec v;
    v.reserve(m.size());
    for (const auto& [k, c] : m)
        if (!c.is_zero()) v.emplace_back(k, c);
    return v;
}

std::map<int32_t, Rational> sv_to_map(const SparseVec& v) {
    std::map<int32_t, Rational> m;
    for (const auto& [k, c] : v) m.emplace(k, c);
    return m;
}

void sv_axpy(std::map<int32_t, Rational>& dst, const SparseVec& src, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [k, x] : src) {
        auto it = dst.find(k);
        if (it == dst.end()) {
            dst.emplace(k, c * x);
        } else {
            it->second += c * x;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

SparseVec sv_scale(SparseVec v, const Rational& c) {
    if (c.is_zero()) return {};
    for (auto& [k, x] : v) x *= c;
    return v;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b, const Rational& cb) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational c = cb * b[j].second;
            if (!c.is_zero()) out.emplace_back(b[j].first, std::move(c));
            ++j;
        } else {
            Rational c = a[i].second + cb * b[j].second;
            if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec Echelon::reduce(SparseVec v, std::map<int32_t, Rational>* comb) const {
    // Stored rows have their pivot at the smallest index, so eliminating in
    // ascending index order only ever creates entries to the right: a single
    // sweep with a min-heap of touched indices suffices.
    std::unordered_map<int32_t, Rational> w;
    w.reserve(v.size() * 2);
    std::priority_queue<int32_t, std::vector<int32_t>, std::greater<int32_t>> heap;
    for (auto& [i, c] : v) {
        w.emplace(i, std::move(c));
        heap.push(i);
    }
    std::unordered_map<int32_t, Rational> cw;
    SparseVec residue;
    int32_t last = INT32_MIN;
    while (!heap.empty()) {
        int32_t i = heap.top();
        heap.pop();
        if (i == last) continue;  // duplicate heap entry
        last = i;
        auto wit = w.find(i);
        if (wit == w.end() || wit->second.is_zero()) continue;
        auto r = rows_.find(i);
        if (r == rows_.end()) {
            residue.emplace_back(i, std::move(wit->second));
            w.erase(wit);
            continue;
        }
        Rational c = std::move(wit->second);
        w.erase(wit);
        // w -= c * row.vec (pivot entry cancels exactly; skip it)
        const SparseVec& vec = r->second.vec;
        for (size_t k = 1; k < vec.size(); ++k) {
            auto [j, x] = std::pair<int32_t, const Rational&>(vec[k].first, vec[k].second);
            auto [jt, fresh] = w.try_emplace(j);
            if (fresh) heap.push(j);
            jt->second -= c * x;
        }
        if (comb && track_) {
            for (auto& [j, x] : r->second.comb) cw[j] += c * x;
        }
    }
    if (comb && track_) {
        for (auto& [j, x] : cw) {
            if (x.is_zero()) continue;
            auto [jt, fresh] = comb->try_emplace(j, x);
            if (!fresh) {
                jt->second += x;
                if (jt->second.is_zero()) comb->erase(jt);
            }
        }
    }
    return residue;
}

std::optional<int32_t> Echelon::insert(SparseVec v, int32_t cid, SparseVec* kernel_out) {
    std::map<int32_t, Rational> comb;
    SparseVec r = reduce(std::move(v), track_ ? &comb : nullptr);
    if (r.empty()) {
        if (kernel_out && track_) {
            // column_cid == sum comb[j] * column_j, so e_cid - comb is a kernel vector
            std::map<int32_t, Rational> k;
            for (auto& [j, c] : comb) k.emplace(j, -c);
            k[cid] += Rational(1);
            *kernel_out = sv_from_map(k);
        }
        return std::nullopt;
    }
    int32_t piv = r.front().first;
    Rational lead = r.front().second;
    Row row;
    row.vec = sv_scale(std::move(r), Rational(1) / lead);
    if (track_) {
        std::map<int32_t, Rational> rc;
        for (auto& [j, c] : comb) rc.emplace(j, -c / lead);
        rc[cid] += Rational(1) / lead;
        row.comb = sv_from_map(rc);
    }
    rows_.emplace(piv, std::move(row));
    return piv;
}

bool Echelon::contains(const SparseVec& v) const { return reduce(v).empty(); }

std::optional<SparseVec> Echelon::solve(const SparseVec& b) const {
    std::map<int32_t, Rational> comb;
    SparseVec r = reduce(b, &comb);
    if (!r.empty()) return std::nullopt;
    return sv_from_map(comb);
}

}  // namespace sullivan
