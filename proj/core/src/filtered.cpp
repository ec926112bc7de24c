#include "sullivan/filtered.hpp"

#include <algorithm>

namespace sullivan {

Derivation FilteredModel::D() const {
    Derivation out(base.algebra, base.algebra, 1, std::nullopt);
    for (auto& [g, v] : D_values)
        if (!v.is_zero()) out.set_value(g, v);
    return out;
}

CDGA FilteredModel::model_cdga() const { return CDGA(A.name + ".model", base.algebra, D()); }

namespace {

struct GroupKey {
    int lower, degree;
    bool operator<(const GroupKey& o) const {
        return lower != o.lower ? lower < o.lower : degree < o.degree;
    }
};

}  // namespace

FilteredModel filtered_extend(const CDGA& A, const BigradedModel& bg,
                              const std::map<int32_t, Polynomial>& seed_D,
                              const std::map<int32_t, Polynomial>& seed_pi, int seed_count,
                              CohomologyCalculator* calc, bool full_pi) {
    const AlgebraPtr& alg = bg.algebra;
    int cap = bg.cap;
    if (A.algebra->degree_cap() < cap + 1)
        throw Error("filtered model: the input algebra needs one slack degree past the cap");
    std::optional<CohomologyCalculator> own_calc;
    if (!calc) {
        own_calc.emplace(A);
        calc = &*own_calc;
    }
    // last degree whose lifts still consult pi-values of earlier generators
    int last_coupled = 1;
    if (!full_pi) {
        for (int n = 2; n <= cap; ++n)
            if (calc->dim(n) > 0) last_coupled = n;
    }

    FilteredModel f{bg, {}, AlgebraMap(alg, A.algebra), A, cap};
    Derivation D(alg, alg, 1, std::nullopt);
    for (auto& [g, v] : seed_D) {
        f.D_values[g] = v;
        if (!v.is_zero()) D.set_value(g, v);
    }
    for (auto& [g, v] : seed_pi) f.pi.set_value(g, v);
    for (int32_t g = 0; g < seed_count; ++g) {
        if (!f.D_values.count(g)) f.D_values[g] = Polynomial{};
        if (!f.pi.defined(g)) f.pi.set_value(g, Polynomial{});
    }

    // group the remaining generators by (lower, degree)
    std::map<GroupKey, std::vector<int32_t>> groups;
    for (int32_t g = seed_count; g < alg->size(); ++g) {
        const GeneratorSymbol& gs = alg->gen(g);
        groups[{gs.lower, gs.degree}].push_back(g);
    }

    for (auto& [key, gens] : groups) {
        int p = key.lower, n = key.degree;
        if (p >= 1 && n + 2 > alg->degree_cap())
            throw CapError("filtered model: generator '" + alg->gen(gens.front()).name +
                           "' of degree " + std::to_string(n) + " needs degree " +
                           std::to_string(n + 2) + " in the working algebra");
        if (p == 0) {
            // D v = d v = 0; pi v = chosen representative of rho(v)
            for (int32_t g : gens) {
                f.D_values[g] = Polynomial{};
                auto it = bg.rho.find(g);
                if (it == bg.rho.end())
                    throw InternalError("lower-0 generator without a class: " + alg->gen(g).name);
                auto reps = bg.H.representatives.find(n);
                if (reps == bg.H.representatives.end())
                    throw Error("filtered model requires representatives in H at degree " +
                                std::to_string(n));
                Polynomial pv;
                for (auto& [i, c] : it->second) pv = pv + reps->second[size_t(i)].scaled(c);
                // representatives may live in the model's own algebra (seeded
                // data documents); their generators form a shared prefix
                f.pi.set_value(g, retag(*A.algebra, pv));
            }
            continue;
        }
        bool decoupled = calc->dim(n + 1) == 0;
        // columns: xi monomials in slices (n+1, q), q = p-2 .. 0; when the
        // A-side couples (H^{n+1}(A) != 0), also the A^n monomials
        struct Col {
            bool is_pi;
            Monomial m;
        };
        std::vector<Col> cols;
        for (int q = p - 2; q >= 0; --q)
            for (const Monomial& m : alg->slice_basis(n + 1, q)) cols.push_back({false, m});
        size_t xi_cols = cols.size();
        if (!decoupled)
            for (const Monomial& m : A.algebra->degree_basis(n)) cols.push_back({true, m});

        // rows: model degree n+2 coordinates, then A degree n+1 (offset)
        int32_t model_rows = int32_t(alg->degree_basis(n + 2).size());
        auto model_row = [&](const Monomial& m) {
            int32_t r = alg->degree_index(m, n + 2);
            if (r < 0) throw InternalError("monomial outside model row space");
            return r;
        };
        auto a_row = [&](const Monomial& m) {
            int32_t r = A.algebra->degree_index(m, n + 1);
            if (r < 0) throw InternalError("monomial outside input row space");
            return model_rows + r;
        };

        Echelon ech(true);
        for (int32_t j = 0; j < int32_t(cols.size()); ++j) {
            std::map<int32_t, Rational> v;
            if (!cols[size_t(j)].is_pi) {
                Polynomial Dm = D.apply(cols[size_t(j)].m);
                for (auto& [m2, c] : Dm.terms()) v.emplace(model_row(m2), c);
                if (!decoupled) {
                    Polynomial pim = f.pi.apply(cols[size_t(j)].m);
                    for (auto& [m2, c] : pim.terms()) v[a_row(m2)] -= c;
                }
            } else {
                Polynomial dam = A.d.apply(cols[size_t(j)].m);
                for (auto& [m2, c] : dam.terms()) v.emplace(a_row(m2), c);
            }
            ech.insert(sv_from_map(v), j);
        }

        for (int32_t g : gens) {
            const Polynomial& dv = bg.d.value(g);
            std::map<int32_t, Rational> rhs;
            Polynomial Ddv = D.apply(dv);
            for (auto& [m2, c] : Ddv.terms()) rhs[model_row(m2)] -= c;
            if (!decoupled) {
                Polynomial pidv = f.pi.apply(dv);
                for (auto& [m2, c] : pidv.terms()) rhs[a_row(m2)] += c;
            }
            auto x = ech.solve(sv_from_map(rhs));
            if (!x) {
                // The lift needs exactness one degree past the truncated
                // resolution. That can only happen in the topmost degree band;
                // anywhere else it is a genuine failure.
                if (n < cap - 1)
                    throw Error("filtered model lift unsolvable at generator '" +
                                alg->gen(g).name + "' (invalid input)");
                f.boundary.insert(g);
                f.D_values[g] = dv;
                if (!dv.is_zero()) D.set_value(g, dv);
                f.pi.set_value(g, Polynomial{});
                continue;
            }
            PolyBuilder xi(*alg);
            PolyBuilder pv(*A.algebra);
            for (auto& [j, c] : *x) {
                if (size_t(j) < xi_cols)
                    xi.add(cols[size_t(j)].m, c);
                else
                    pv.add(cols[size_t(j)].m, c);
            }
            Polynomial Dv = dv + xi.build();
            f.D_values[g] = Dv;
            if (decoupled) {
                if (full_pi || n <= last_coupled + 1) {
                    // H^{n+1}(A) = 0: pi(Dv) is closed, hence exact
                    Polynomial target = f.pi.apply(Dv);
                    auto prim = target.is_zero() ? std::optional<Polynomial>(Polynomial{})
                                                 : calc->primitive(target, n + 1);
                    if (!prim)
                        throw InternalError("decoupled filtered lift: pi(Dv) not exact at '" +
                                            alg->gen(g).name + "'");
                    f.pi.set_value(g, std::move(*prim));
                }
            } else {
                f.pi.set_value(g, pv.build());
            }
            if (!Dv.is_zero()) D.set_value(g, std::move(Dv));
        }
    }
    return f;
}

FilteredModel filtered_model(const CDGA& A, const BigradedModel& bg,
                             CohomologyCalculator* calc, bool full_pi) {
    return filtered_extend(A, bg, {}, {}, 0, calc, full_pi);
}

std::map<int, Derivation> deformation_stages(const Derivation& d,
                                             const std::map<int32_t, Polynomial>& D_values,
                                             const std::set<int32_t>& skip) {
    ConstAlgebraPtr alg = d.domain_ptr();
    std::map<int, std::map<int32_t, std::vector<std::pair<Monomial, Rational>>>> parts;
    for (auto& [g, Dv] : D_values) {
        if (skip.count(g)) continue;
        Polynomial diff = Dv - d.value(g);
        int glow = alg->gen(g).lower;
        for (auto& [m, c] : diff.terms()) {
            int i = glow - alg->mono_lower(m);
            if (i < 2)
                throw InternalError("deformation term with lower shift " + std::to_string(i) +
                                    " on generator '" + alg->gen(g).name + "'");
            parts[i][g].emplace_back(m, c);
        }
    }
    std::map<int, Derivation> out;
    for (auto& [i, vals] : parts) {
        Derivation di(alg, alg, 1, i);
        for (auto& [g, ts] : vals) di.set_value(g, Polynomial::from_terms(*alg, ts));
        if (!di.is_zero()) out.emplace(i, std::move(di));
    }
    return out;
}

std::map<int, Derivation> deformation_stages(const FilteredModel& f) {
    return deformation_stages(f.base.d, f.D_values, f.boundary);
}

std::map<int32_t, Polynomial> gauge_conjugate(const Derivation& d,
                                              const std::map<int32_t, Polynomial>& D_values,
                                              const Derivation& mu) {
    ConstAlgebraPtr alg = d.domain_ptr();
    AlgebraMap phi = exp_map(mu, 1);
    AlgebraMap phi_inv = exp_map(mu, -1);
    Derivation D(alg, alg, 1, std::nullopt);
    for (auto& [g, v] : D_values)
        if (!v.is_zero()) D.set_value(g, v);
    std::map<int32_t, Polynomial> out;
    for (int32_t g = 0; g < alg->size(); ++g) {
        out[g] = phi.apply(D.apply(phi_inv.apply(Polynomial::generator(*alg, g))));
    }
    return out;
}

FilteredModel gauge_normalize(const FilteredModel& f, int stage, const Derivation& mu) {
    const AlgebraPtr& alg = f.base.algebra;
    // validate the witness: [d, mu] must equal d_stage
    auto stages = deformation_stages(f);
    Derivation d_i =
        stages.count(stage) ? stages.at(stage) : Derivation(alg, alg, 1, stage);
    Derivation br = bracket(f.base.d, mu);
    for (int32_t g = 0; g < alg->size(); ++g) {
        if (f.boundary.count(g)) continue;
        if (!(br.value(g) == d_i.value(g)))
            throw Error("gauge witness fails [d, mu] = d_" + std::to_string(stage) +
                        " at generator '" + alg->gen(g).name + "'");
    }
    FilteredModel out = f;
    out.D_values = gauge_conjugate(f.base.d, f.D_values, mu);
    AlgebraMap phi_inv = exp_map(mu, -1);
    AlgebraMap npi(alg, f.A.algebra);
    for (int32_t g = 0; g < alg->size(); ++g) {
        if (!f.pi.defined(g)) continue;
        npi.set_value(g, f.pi.apply(phi_inv.apply(Polynomial::generator(*alg, g))));
    }
    out.pi = std::move(npi);
    // the conjugation kills every stage <= `stage`
    out.boundary = f.boundary;
    auto post = deformation_stages(out);
    for (auto& [i, di] : post) {
        if (i <= stage && !di.is_zero())
            throw InternalError("gauge failed to clear stage " + std::to_string(i));
    }
    return out;
}

std::optional<int> quasi_iso_failure(const FilteredModel& f) {
    CDGA model = f.model_cdga();
    CohomologyCalculator cm(model);
    CohomologyCalculator ca(f.A);
    CdgaMorphism phi("pi", f.pi);
    auto bad = check_chain_map(phi, model, f.A);
    if (bad) return f.base.algebra->gen(*bad).degree;
    CohomologyMorphism ind = induced_map(phi, cm, ca, f.cap);
    for (int n = 2; n < f.cap; ++n) {
        int dm = cm.dim(n), da = ca.dim(n);
        if (dm != da) return n;
        if (dm == 0) continue;
        if (int(rref(ind.matrices.at(n)).pivot_columns.size()) != dm) return n;
    }
    return std::nullopt;
}

}  // namespace sullivan
