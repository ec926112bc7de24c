#include "sullivan/bigraded.hpp"

namespace sullivan {

SparseVec rho_of_monomial(const FreeCGA& alg, const std::map<int32_t, SparseVec>& rho,
                          const FiniteGradedAlgebra& H, const Monomial& m) {
    SparseVec cur = {{0, Rational(1)}};
    int cur_deg = 0;
    for (auto& [g, e] : m.factors) {
        auto it = rho.find(g);
        if (it == rho.end() || it->second.empty()) return {};
        for (int k = 0; k < e; ++k) {
            cur = H.product(cur_deg, cur, alg.gen(g).degree, it->second);
            cur_deg += alg.gen(g).degree;
            if (cur.empty()) return {};
        }
    }
    return cur;
}

namespace {

std::string fresh_name(const FreeCGA& alg, int p, int n, int k) {
    std::string base = "v" + std::to_string(p) + "_" + std::to_string(n) + "_" + std::to_string(k);
    if (!alg.find(base)) return base;
    int suffix = 1;
    while (alg.find(base + "_m" + std::to_string(suffix))) ++suffix;
    return base + "_m" + std::to_string(suffix);
}

// d-image coordinates of slice monomials, cached across builder stages.
// Slices only ever grow by appending new-generator singles, so a shorter
// cached prefix stays valid and is extended in place.
class DColumnCache {
public:
    const std::vector<SparseVec>& get(const FreeCGA& alg, const Derivation& d, int deg, int lo) {
        auto& entry = cache_[{deg, lo}];
        const auto& monos = alg.slice_basis(deg, lo);
        for (size_t j = entry.size(); j < monos.size(); ++j) {
            Polynomial dm = d.apply(monos[j]);
            entry.push_back(to_slice_vec(alg, dm, deg + 1, lo - 1));
        }
        return entry;
    }

private:
    std::map<std::pair<int, int>, std::vector<SparseVec>> cache_;
};

BigradedModel build(const FiniteGradedAlgebra& H, int cap, const BigradedSeed* seed) {
    // Generators reach degree cap-1, resolving H through degree cap; kernels at
    // degree cap+1 need one slack degree in the working algebra and H itself
    // must present classes through degree cap.
    if (H.cap < cap + 1)
        throw Error("bigraded model at cap " + std::to_string(cap) + " needs a presentation through degree " +
                    std::to_string(cap) + " (presentation cap " + std::to_string(H.cap) + ")");
    AlgebraPtr alg = seed ? seed->algebra : std::make_shared<FreeCGA>(cap + 1);
    if (seed && alg->degree_cap() != cap + 1)
        throw Error("seed algebra must carry one slack degree past the cap");
    BigradedModel model{alg, Derivation(alg, alg, 1, 1), {}, H, cap, 0};
    if (seed) {
        for (auto& [g, v] : seed->d_values)
            if (!v.is_zero()) model.d.set_value(g, v);
        model.rho = seed->rho;
        model.seed_count = alg->size();
    }

    DColumnCache dcols;
    for (int n = 2; n <= cap - 1; ++n) {
        // ---- V_0: make rho surjective onto H^n
        if (H.dim(n) > 0) {
            Echelon span;
            int32_t cid = 0;
            for (const Monomial& m : alg->slice_basis(n, 0))
                span.insert(rho_of_monomial(*alg, model.rho, H, m), cid++);
            int per_degree = 0;
            for (int i = 0; i < H.dim(n); ++i) {
                if (span.insert({{int32_t(i), Rational(1)}}, cid++)) {
                    int32_t g = alg->add_generator(fresh_name(*alg, 0, n, per_degree++), n, 0);
                    model.rho[g] = {{int32_t(i), Rational(1)}};
                }
            }
        }
        // ---- V_p (p >= 1): kill the cohomology defect at (p-1, n+1)
        for (int p = 1; p <= n; ++p) {
            int lo = p - 1;
            int m_deg = n + 1;
            const auto& cols = alg->slice_basis(m_deg, lo);
            if (cols.empty()) continue;
            Echelon kech(true);
            std::vector<SparseVec> kernel;
            if (lo == 0) {
                for (int32_t j = 0; j < int32_t(cols.size()); ++j) {
                    SparseVec kvec;
                    if (!kech.insert(rho_of_monomial(*alg, model.rho, H, cols[size_t(j)]), j,
                                     &kvec))
                        kernel.push_back(std::move(kvec));
                }
            } else {
                const auto& dc = dcols.get(*alg, model.d, m_deg, lo);
                for (int32_t j = 0; j < int32_t(dc.size()); ++j) {
                    SparseVec kvec;
                    if (!kech.insert(dc[size_t(j)], j, &kvec)) kernel.push_back(std::move(kvec));
                }
            }
            if (kernel.empty()) continue;
            Echelon imech;
            int32_t iid = 0;
            for (const SparseVec& col : dcols.get(*alg, model.d, n, p)) imech.insert(col, iid++);
            int per_slice = 0;
            for (auto& kv : kernel) {
                if (imech.contains(kv)) continue;
                Polynomial dv = from_slice_vec(*alg, kv, m_deg, lo);
                int32_t g = alg->add_generator(fresh_name(*alg, p, n, per_slice++), n, p);
                model.d.set_value(g, std::move(dv));
                imech.insert(kv, iid++);
            }
        }
    }
    return model;
}

}  // namespace

BigradedModel bigraded_model(const FiniteGradedAlgebra& H, int cap) { return build(H, cap, nullptr); }

BigradedModel bigraded_model_seeded(const FiniteGradedAlgebra& H, int cap,
                                    const BigradedSeed& seed) {
    return build(H, cap, &seed);
}

int defect_dimension(const FreeCGA& alg, const Derivation& d, int n, int p) {
    if (p < 1) throw Error("defect_dimension needs p >= 1");
    const auto& cols = alg.slice_basis(n, p);
    Echelon kech;
    int kernel = 0;
    for (int32_t j = 0; j < int32_t(cols.size()); ++j) {
        SparseVec row = to_slice_vec(alg, d.apply(cols[size_t(j)]), n + 1, p - 1);
        if (!kech.insert(std::move(row), j)) ++kernel;
    }
    Echelon imech;
    int32_t iid = 0;
    int rank_im = 0;
    for (const Monomial& m : alg.slice_basis(n - 1, p + 1)) {
        if (imech.insert(to_slice_vec(alg, d.apply(m), n, p), iid++)) ++rank_im;
    }
    return kernel - rank_im;
}

FiniteGradedAlgebra resolved_algebra(const FreeCGA& alg, const Derivation& d, int cap) {
    FiniteGradedAlgebra H;
    H.cap = cap;
    struct DegreeData {
        std::vector<int32_t> rep_cols;  // chosen complement monomial positions
        Echelon coords{true};           // ideal columns (ids >= dim) then unit complements
        int dim = 0;
    };
    std::map<int, DegreeData> per;
    // We cannot know dims before scanning, so assign class ids after: first pass
    // collects the ideal echelon and complement choice per degree.
    for (int n = 2; n < cap; ++n) {
        DegreeData dd;
        const auto& monos = alg.slice_basis(n, 0);
        Echelon ideal;
        int32_t cid = 0;
        for (const Monomial& m : alg.slice_basis(n - 1, 1))
            ideal.insert(to_slice_vec(alg, d.apply(m), n, 0), cid++);
        // complement: greedy over monomials in canonical order
        Echelon span = ideal;
        for (int32_t j = 0; j < int32_t(monos.size()); ++j) {
            if (span.insert({{j, Rational(1)}}, cid++)) dd.rep_cols.push_back(j);
        }
        dd.dim = int(dd.rep_cols.size());
        // tracked coordinates echelon: ideal columns get ids >= dim
        int32_t iid = dd.dim;
        for (auto& [piv, row] : ideal.rows()) dd.coords.insert(row.vec, iid++);
        for (int32_t k = 0; k < int32_t(dd.rep_cols.size()); ++k)
            dd.coords.insert({{dd.rep_cols[size_t(k)], Rational(1)}}, k);
        if (dd.dim > 0) {
            std::vector<std::string> ls;
            std::vector<Polynomial> reps;
            for (int i = 0; i < dd.dim; ++i) {
                ls.push_back("h" + std::to_string(n) + "_" + std::to_string(i));
                Monomial m = alg.slice_basis(n, 0)[size_t(dd.rep_cols[size_t(i)])];
                reps.push_back(Polynomial::single(alg, std::move(m), Rational(1)));
            }
            H.labels[n] = std::move(ls);
            H.representatives[n] = std::move(reps);
        }
        per.emplace(n, std::move(dd));
    }
    auto coords_of = [&](const Polynomial& p, int n) -> SparseVec {
        auto& dd = per.at(n);
        std::map<int32_t, Rational> comb;
        SparseVec r = dd.coords.reduce(to_slice_vec(alg, p, n, 0), &comb);
        if (!r.empty()) throw InternalError("resolved_algebra: vector outside ideal+complement span");
        std::map<int32_t, Rational> out;
        for (auto& [j, c] : comb)
            if (j < dd.dim) out.emplace(j, c);
        return sv_from_map(out);
    };
    for (auto& [d1, reps1] : H.representatives) {
        for (auto& [d2, reps2] : H.representatives) {
            if (d1 > d2 || d1 + d2 >= cap) continue;
            for (int i1 = 0; i1 < int(reps1.size()); ++i1) {
                for (int i2 = 0; i2 < int(reps2.size()); ++i2) {
                    Polynomial p = multiply(alg, reps1[size_t(i1)], reps2[size_t(i2)]);
                    if (p.is_zero()) continue;
                    SparseVec coords = coords_of(p, d1 + d2);
                    if (!coords.empty()) H.products[{d1, i1, d2, i2}] = std::move(coords);
                }
            }
        }
    }
    for (auto& [n, ls] : H.labels) {
        Echelon span;
        int32_t cid = 0;
        for (auto& [key, coords] : H.products) {
            auto [d1, i1, d2, i2] = key;
            if (d1 + d2 == n) span.insert(coords, cid++);
        }
        std::vector<int> ind;
        for (int i = 0; i < int(ls.size()); ++i)
            if (span.insert({{int32_t(i), Rational(1)}}, cid++)) ind.push_back(i);
        H.indecomposables[n] = std::move(ind);
    }
    return H;
}

SparseVec resolved_coordinates(const FreeCGA& alg, const Derivation& d,
                               const FiniteGradedAlgebra& H, const Polynomial& p, int degree) {
    if (p.is_zero()) return {};
    Echelon coords(true);
    int dim = H.dim(degree);
    int32_t cid = dim;
    for (const Monomial& m : alg.slice_basis(degree - 1, 1))
        coords.insert(to_slice_vec(alg, d.apply(m), degree, 0), cid++);
    auto reps = H.representatives.find(degree);
    for (int32_t i = 0; i < dim; ++i)
        coords.insert(to_slice_vec(alg, reps->second[size_t(i)], degree, 0), i);
    std::map<int32_t, Rational> comb;
    SparseVec r = coords.reduce(to_slice_vec(alg, p, degree, 0), &comb);
    if (!r.empty()) throw InternalError("resolved_coordinates: element outside ideal+basis span");
    std::map<int32_t, Rational> out;
    for (auto& [j, c] : comb)
        if (j < dim) out.emplace(j, c);
    return sv_from_map(out);
}

std::map<std::pair<int, int>, int> generator_profile(const BigradedModel& m) {
    std::map<std::pair<int, int>, int> out;
    for (const auto& g : m.algebra->generators()) ++out[{g.degree, g.lower}];
    return out;
}

}  // namespace sullivan
