#include "sullivan/cohomology.hpp"

#include <algorithm>

namespace sullivan {

int FiniteGradedAlgebra::dim(int n) const {
    if (n == 0) return 1;
    auto it = labels.find(n);
    return it == labels.end() ? 0 : int(it->second.size());
}

int FiniteGradedAlgebra::top_degree() const {
    int top = 0;
    for (auto& [n, ls] : labels)
        if (!ls.empty()) top = std::max(top, n);
    return top;
}

SparseVec FiniteGradedAlgebra::product(int d1, const SparseVec& a, int d2,
                                       const SparseVec& b) const {
    if (d1 + d2 >= cap) throw CapError("product degree exceeds presentation cap");
    if (d1 == 0 || d2 == 0) {
        // unit factor: scalar multiple of the other side
        const SparseVec& v = d1 == 0 ? b : a;
        const SparseVec& u = d1 == 0 ? a : b;
        Rational c = u.empty() ? Rational(0) : u.front().second;
        return sv_scale(v, c);
    }
    std::map<int32_t, Rational> out;
    for (auto& [i1, c1] : a) {
        for (auto& [i2, c2] : b) {
            const SparseVec* pv;
            Rational sign(1);
            if (d1 <= d2) {
                auto it = products.find({d1, i1, d2, i2});
                if (it == products.end()) continue;
                pv = &it->second;
            } else {
                auto it = products.find({d2, i2, d1, i1});
                if (it == products.end()) continue;
                pv = &it->second;
                if (d1 % 2 != 0 && d2 % 2 != 0) sign = Rational(-1);
            }
            sv_axpy(out, *pv, sign * c1 * c2);
        }
    }
    return sv_from_map(out);
}

CohomologyCalculator::CohomologyCalculator(CDGA c) : c_(std::move(c)) {}

int CohomologyCalculator::rank(int n) {
    if (n < 0) return 0;
    const FreeCGA& alg = *c_.algebra;
    if (n + 1 > alg.degree_cap())
        throw CapError("cohomology rank at degree " + std::to_string(n) + " needs degree " +
                       std::to_string(n + 1) + " within cap " + std::to_string(alg.degree_cap()));
    auto it = rank_cache_.find(n);
    if (it != rank_cache_.end()) return it->second;
    const auto& basis = alg.degree_basis(n);
    Echelon ech;
    int r = 0;
    for (int32_t j = 0; j < int32_t(basis.size()); ++j) {
        Polynomial dm = c_.d.apply(basis[size_t(j)]);
        if (ech.insert(to_degree_vec(alg, dm, n + 1), j)) ++r;
    }
    rank_cache_.emplace(n, r);
    return r;
}

const Echelon& CohomologyCalculator::image_echelon(int n) {
    auto it = image_cache_.find(n);
    if (it != image_cache_.end()) return it->second;
    const FreeCGA& alg = *c_.algebra;
    Echelon ech(true);
    if (n >= 1) {
        const auto& below = alg.degree_basis(n - 1);
        for (int32_t j = 0; j < int32_t(below.size()); ++j) {
            Polynomial dm = c_.d.apply(below[size_t(j)]);
            ech.insert(to_degree_vec(alg, dm, n), j);
        }
    }
    return image_cache_.emplace(n, std::move(ech)).first->second;
}

CohomologyCalculator::DegreeData& CohomologyCalculator::data(int n) {
    const FreeCGA& alg = *c_.algebra;
    if (n < 0 || n + 1 > alg.degree_cap())
        throw CapError("cohomology at degree " + std::to_string(n) +
                       " needs degree " + std::to_string(n + 1) + " within cap " +
                       std::to_string(alg.degree_cap()));
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    DegreeData dd;
    const auto& basis = alg.degree_basis(n);
    // kernel of d via a tracked echelon over degree-(n+1) coordinates
    Echelon ker_ech(true);
    for (int32_t j = 0; j < int32_t(basis.size()); ++j) {
        Polynomial dm = c_.d.apply(basis[size_t(j)]);
        SparseVec col = to_degree_vec(alg, dm, n + 1);
        SparseVec kvec;
        if (!ker_ech.insert(std::move(col), j, &kvec)) dd.kernel.push_back(std::move(kvec));
    }
    // classes: kernel vectors independent modulo the image; coordinate echelon
    // lists image columns first (ids >= kernel count) then class columns
    const Echelon& image = image_echelon(n);
    int32_t img_id = int32_t(dd.kernel.size());
    for (auto& [piv, row] : image.rows()) dd.coords.insert(row.vec, img_id++);
    int32_t cls_id = 0;
    for (auto& kv : dd.kernel) {
        if (dd.coords.insert(kv, cls_id)) {
            dd.class_reps.push_back(kv);
            ++cls_id;
        }
    }
    return cache_.emplace(n, std::move(dd)).first->second;
}

int CohomologyCalculator::dim(int n) {
    if (n == 0) return 1;
    if (n < 2) return 0;
    const FreeCGA& alg = *c_.algebra;
    int cols = int(alg.degree_basis(n).size());
    return cols - rank(n) - rank(n - 1);
}

const std::vector<Polynomial>& CohomologyCalculator::representatives(int n) {
    static const std::vector<Polynomial> empty;
    if (n < 2) return empty;
    auto cached = reps_cache_.find(n);
    if (cached != reps_cache_.end()) return cached->second;
    if (dim(n) == 0) return empty;
    DegreeData& dd = data(n);
    if (dd.class_reps.empty()) return empty;
    std::vector<Polynomial> out;
    const FreeCGA& alg = *c_.algebra;
    out.reserve(dd.class_reps.size());
    for (auto& v : dd.class_reps) out.push_back(from_degree_vec(alg, v, n));
    return reps_cache_.emplace(n, std::move(out)).first->second;
}

std::vector<Polynomial> CohomologyCalculator::cocycle_basis(int n) {
    std::vector<Polynomial> out;
    if (n == 0) {
        out.push_back(Polynomial::unit(*c_.algebra));
        return out;
    }
    if (n < 2) return out;
    DegreeData& dd = data(n);
    out.reserve(dd.kernel.size());
    for (auto& v : dd.kernel) out.push_back(from_degree_vec(*c_.algebra, v, n));
    return out;
}

SparseVec CohomologyCalculator::coordinates(const Polynomial& z, int n) {
    if (z.is_zero()) return {};
    if (n == 0) return {{0, z.terms().front().second}};
    const FreeCGA& alg = *c_.algebra;
    if (n + 1 <= alg.degree_cap() && !c_.d.apply(z).is_zero())
        throw Error("coordinates of a non-closed polynomial");
    if (dim(n) == 0) return {};
    DegreeData& dd = data(n);
    SparseVec v = to_degree_vec(alg, z, n);
    std::map<int32_t, Rational> comb;
    SparseVec r = dd.coords.reduce(std::move(v), &comb);
    if (!r.empty()) throw InternalError("closed polynomial outside kernel+image span");
    std::map<int32_t, Rational> out;
    for (auto& [j, c] : comb)
        if (j < int32_t(dd.kernel.size())) out.emplace(j, c);
    // combination ids for class columns were assigned densely in class order
    return sv_from_map(out);
}

std::optional<Polynomial> CohomologyCalculator::primitive(const Polynomial& z, int n) {
    const FreeCGA& alg = *c_.algebra;
    if (z.is_zero()) return Polynomial{};
    if (n + 1 <= alg.degree_cap() && !c_.d.apply(z).is_zero())
        throw Error("is_exact: input is not closed");
    if (n < 1) return std::nullopt;  // the unit is never exact in a connected CDGA
    auto x = image_echelon(n).solve(to_degree_vec(alg, z, n));
    if (!x) return std::nullopt;
    const auto& below = alg.degree_basis(n - 1);
    std::vector<std::pair<Monomial, Rational>> ts;
    for (auto& [j, c] : *x) ts.emplace_back(below[size_t(j)], c);
    return Polynomial::from_terms(alg, std::move(ts));
}

FiniteGradedAlgebra CohomologyCalculator::presentation(int cap) {
    FiniteGradedAlgebra H;
    H.cap = cap;
    for (int n = 2; n < cap; ++n) {
        int d = dim(n);
        if (d == 0) continue;
        std::vector<std::string> ls;
        for (int i = 0; i < d; ++i) ls.push_back("h" + std::to_string(n) + "_" + std::to_string(i));
        H.labels[n] = std::move(ls);
        H.representatives[n] = representatives(n);
    }
    // structure constants
    for (auto& [d1, reps1] : H.representatives) {
        for (auto& [d2, reps2] : H.representatives) {
            if (d1 > d2 || d1 + d2 >= cap) continue;
            for (int i1 = 0; i1 < int(reps1.size()); ++i1) {
                for (int i2 = 0; i2 < int(reps2.size()); ++i2) {
                    Polynomial p = multiply(*c_.algebra, reps1[size_t(i1)], reps2[size_t(i2)]);
                    SparseVec coords = p.is_zero() ? SparseVec{} : coordinates(p, d1 + d2);
                    if (!coords.empty()) H.products[{d1, i1, d2, i2}] = std::move(coords);
                }
            }
        }
    }
    // indecomposables: complement of the span of products, greedily in basis order
    for (auto& [n, ls] : H.labels) {
        Echelon span;
        int32_t cid = 0;
        for (auto& [key, coords] : H.products) {
            auto [d1, i1, d2, i2] = key;
            if (d1 + d2 == n) span.insert(coords, cid++);
        }
        std::vector<int> ind;
        for (int i = 0; i < int(ls.size()); ++i) {
            if (span.insert({{int32_t(i), Rational(1)}}, cid++)) ind.push_back(i);
        }
        H.indecomposables[n] = std::move(ind);
    }
    return H;
}

std::vector<Polynomial> cocycles(const CDGA& c, int n) {
    CohomologyCalculator calc(c);
    return calc.cocycle_basis(n);
}

std::optional<Polynomial> is_exact(const CDGA& c, const Polynomial& z) {
    if (z.is_zero()) return Polynomial{};
    auto deg = homogeneous_degree(*c.algebra, z);
    if (!deg) throw Error("is_exact: input must be homogeneous");
    CohomologyCalculator calc(c);
    return calc.primitive(z, *deg);
}

FiniteGradedAlgebra presentation(const CDGA& c, int cap) {
    CohomologyCalculator calc(c);
    return calc.presentation(cap);
}

CohomologyMorphism induced_map(const CdgaMorphism& phi, const CDGA& src, const CDGA& dst, int cap) {
    CohomologyCalculator s(src), t(dst);
    auto bad = check_chain_map(phi, src, dst);
    if (bad)
        throw Error("induced_map: not a chain map at generator '" +
                    src.algebra->gen(*bad).name + "'");
    return induced_map(phi, s, t, cap);
}

CohomologyMorphism induced_map(const CdgaMorphism& phi, CohomologyCalculator& src,
                               CohomologyCalculator& dst, int cap) {
    CohomologyMorphism out;
    out.cap = cap;
    for (int n = 2; n < cap; ++n) {
        int ds = src.dim(n), dt = dst.dim(n);
        if (ds == 0 && dt == 0) continue;
        ScalarMatrix m(dt, ds);
        for (int j = 0; j < ds; ++j) {
            Polynomial img = phi.map.apply(src.representatives(n)[size_t(j)]);
            if (img.is_zero()) continue;
            SparseVec coords = dst.coordinates(img, n);
            for (auto& [i, c] : coords) m.at(i, j) = c;
        }
        out.matrices.emplace(n, std::move(m));
    }
    return out;
}

std::optional<int> surjective_up_to(const CohomologyMorphism& m, CohomologyCalculator& target,
                                    int cap) {
    for (int n = 2; n < cap; ++n) {
        int dt = target.dim(n);
        if (dt == 0) continue;
        auto it = m.matrices.find(n);
        if (it == m.matrices.end()) return n;
        if (int(rref(it->second).pivot_columns.size()) < dt) return n;
    }
    return std::nullopt;
}

}  // namespace sullivan
