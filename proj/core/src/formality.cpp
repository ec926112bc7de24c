#include "sullivan/formality.hpp"

#include <algorithm>

namespace sullivan {

namespace {

// Dense row ids for (generator, slice-position) pairs, assigned on first use.
class RowIndexer {
public:
    int32_t id(int32_t gen, int32_t pos) {
        auto [it, fresh] = ids_.emplace(std::make_pair(gen, pos), next_);
        if (fresh) ++next_;
        return it->second;
    }

private:
    std::map<std::pair<int32_t, int32_t>, int32_t> ids_;
    int32_t next_ = 0;
};

}  // namespace

DerivationSlice derivation_slice(const BigradedModel& m, int p, int q) {
    const FreeCGA& alg = *m.algebra;
    DerivationSlice out;
    out.p = p;
    out.q = q;
    auto enumerate = [&](int pp, int qq, std::vector<std::pair<int32_t, Monomial>>& basis) {
        for (int32_t g = 0; g < alg.size(); ++g) {
            const GeneratorSymbol& gs = alg.gen(g);
            int vd = gs.degree + qq, vl = gs.lower - pp;
            if (vd < 0 || vd > alg.degree_cap() || vl < 0) continue;
            for (const Monomial& mono : alg.slice_basis(vd, vl)) basis.emplace_back(g, mono);
        }
    };
    enumerate(p, q, out.basis);
    enumerate(p + 1, q + 1, out.target_basis);
    std::map<std::pair<int32_t, Monomial*>, int32_t> tmp;
    // index the target basis
    std::map<int32_t, std::unordered_map<Monomial, int32_t, MonomialHash>> tindex;
    for (int32_t i = 0; i < int32_t(out.target_basis.size()); ++i)
        tindex[out.target_basis[size_t(i)].first].emplace(out.target_basis[size_t(i)].second, i);
    (void)tmp;

    for (auto& [g, mono] : out.basis) {
        Derivation theta(m.algebra, m.algebra, q, p);
        theta.set_value(g, Polynomial::single(alg, mono, Rational(1)));
        Derivation br = bracket(m.d, theta);
        std::map<int32_t, Rational> col;
        for (auto& [g2, v] : br.values()) {
            auto git = tindex.find(g2);
            for (auto& [m2, c] : v.terms()) {
                if (git == tindex.end()) throw InternalError("derivation slice target misses a generator");
                auto pit = git->second.find(m2);
                if (pit == git->second.end())
                    throw InternalError("derivation slice target misses a monomial");
                col[pit->second] += c;
                if (col[pit->second].is_zero()) col.erase(pit->second);
            }
        }
        out.matrix.push_back(sv_from_map(col));
    }
    return out;
}

ObstructionClass obstruction_at(const Derivation& d, const std::map<int32_t, Polynomial>& D_values,
                                int stage, const std::set<int32_t>& skip) {
    if (stage < 2) throw Error("obstruction stages start at 2");
    ConstAlgebraPtr alg = d.domain_ptr();
    auto stages = deformation_stages(d, D_values, skip);
    for (auto& [i, di] : stages) {
        if (i < stage && !di.is_zero())
            throw Error("obstruction precondition violated: d_" + std::to_string(i) +
                        " != 0 below stage " + std::to_string(stage));
    }
    auto it = stages.find(stage);
    if (it == stages.end()) {
        return ObstructionClass(stage, ObstructionClass::Status::Zero,
                                Derivation(alg, alg, 1, stage));
    }
    const Derivation& di = it->second;
    ObstructionClass out(stage, ObstructionClass::Status::NonExact, di);
    // closedness: [d, d_i] = 0
    Derivation closed = bracket(d, di);
    for (int32_t g = 0; g < alg->size(); ++g) {
        if (alg->gen(g).degree + 2 > alg->degree_cap() || skip.count(g)) continue;
        if (!closed.value(g).is_zero())
            throw InternalError("deformation stage " + std::to_string(stage) +
                                " is not closed at '" + alg->gen(g).name + "'");
    }
    // solve [d, mu] = d_stage over Der_{stage-1}^0
    struct Col {
        int32_t gen;
        Monomial mono;
    };
    std::vector<Col> cols;
    for (int32_t g = 0; g < alg->size(); ++g) {
        const GeneratorSymbol& gs = alg->gen(g);
        int vl = gs.lower - (stage - 1);
        if (vl < 0) continue;
        for (const Monomial& mono : alg->slice_basis(gs.degree, vl)) cols.push_back({g, mono});
    }
    RowIndexer rows;
    auto row_of = [&](int32_t g, const Polynomial& v, std::map<int32_t, Rational>& into,
                      const Rational& coeff) {
        int vd = alg->gen(g).degree + 1;
        int vl = alg->gen(g).lower - stage;
        for (auto& [m2, c] : v.terms()) {
            int32_t pos = alg->slice_index(m2, vd, vl);
            if (pos < 0) throw InternalError("obstruction row outside slice");
            int32_t rid = rows.id(g, pos);
            into[rid] += coeff * c;
            if (into[rid].is_zero()) into.erase(rid);
        }
    };
    Echelon ech(true);
    for (int32_t j = 0; j < int32_t(cols.size()); ++j) {
        Derivation mu(alg, alg, 0, stage - 1);
        mu.set_value(cols[size_t(j)].gen,
                     Polynomial::single(*alg, cols[size_t(j)].mono, Rational(1)));
        std::map<int32_t, Rational> colv;
        // [d, mu](g') = d(mu(g')) - mu(d g')
        for (int32_t g2 = 0; g2 < alg->size(); ++g2) {
            if (skip.count(g2)) continue;
            Polynomial t = d.apply(mu.value(g2)) - mu.apply(d.value(g2));
            if (!t.is_zero()) row_of(g2, t, colv, Rational(1));
        }
        ech.insert(sv_from_map(colv), j);
    }
    std::map<int32_t, Rational> rhs;
    for (int32_t g2 = 0; g2 < alg->size(); ++g2) {
        if (skip.count(g2)) continue;
        const Polynomial& v = di.value(g2);
        if (!v.is_zero()) row_of(g2, v, rhs, Rational(1));
    }
    auto x = ech.solve(sv_from_map(rhs));
    if (!x) {
        out.status = ObstructionClass::Status::NonExact;
        return out;
    }
    Derivation mu(alg, alg, 0, stage - 1);
    std::map<int32_t, PolyBuilder> vals;
    for (auto& [j, c] : *x) {
        const Col& col = cols[size_t(j)];
        auto [vit, fresh] = vals.try_emplace(col.gen, *alg);
        vit->second.add(col.mono, c);
    }
    for (auto& [g, b] : vals) {
        Polynomial v = b.build();
        if (!v.is_zero()) mu.set_value(g, std::move(v));
    }
    // post-hoc verification by independent evaluation
    Derivation check = bracket(d, mu);
    for (int32_t g = 0; g < alg->size(); ++g) {
        if (skip.count(g)) continue;
        if (!(check.value(g) == di.value(g)))
            throw InternalError("obstruction witness fails verification at '" + alg->gen(g).name +
                                "'");
    }
    out.status = ObstructionClass::Status::Exact;
    out.witness = std::move(mu);
    return out;
}

ObstructionClass obstruction(const FilteredModel& f, int stage) {
    return obstruction_at(f.base.d, f.D_values, stage, f.boundary);
}

namespace {

template <typename GaugeFn>
FormalityVerdict run_loop(const Derivation& d, std::map<int32_t, Polynomial>& D_values, int cap,
                          const std::set<int32_t>& skip, GaugeFn&& apply_gauge) {
    FormalityVerdict verdict;
    verdict.cap = cap;
    int guard = 0;
    while (true) {
        auto stages = deformation_stages(d, D_values, skip);
        int stage = 0;
        for (auto& [i, di] : stages) {
            if (!di.is_zero()) {
                stage = i;
                break;
            }
        }
        if (stage == 0) {
            verdict.formal = true;
            return verdict;
        }
        ObstructionClass oc = obstruction_at(d, D_values, stage, skip);
        if (oc.status == ObstructionClass::Status::NonExact) {
            verdict.formal = false;
            verdict.stage = stage;
            verdict.obstruction = std::move(oc);
            return verdict;
        }
        verdict.transcript.push_back({stage, *oc.witness});
        apply_gauge(stage, *oc.witness);
        if (++guard > cap + 2) throw InternalError("obstruction loop failed to terminate");
    }
}

}  // namespace

FormalityVerdict obstruction_loop(const Derivation& d, std::map<int32_t, Polynomial> D_values,
                                  int cap, const std::set<int32_t>& skip) {
    return run_loop(d, D_values, cap, skip, [&](int, const Derivation& mu) {
        D_values = gauge_conjugate(d, D_values, mu);
    });
}

FormalityVerdict decide_formality(const CDGA& c, int cap) {
    CohomologyCalculator calc(c);
    FiniteGradedAlgebra H = calc.presentation(cap + 1);
    BigradedModel bg = bigraded_model(H, cap);
    FilteredModel fm = filtered_model(c, bg, &calc, /*full_pi=*/false);
    return run_loop(fm.base.d, fm.D_values, cap, fm.boundary,
                    [&](int stage, const Derivation& mu) { fm = gauge_normalize(fm, stage, mu); });
}

NegativeDerivationReport negative_derivations(const FiniteGradedAlgebra& H, int cap) {
    NegativeDerivationReport report;
    int top = H.top_degree();
    report.scanned_down_to = -top;
    std::vector<int> degs;
    for (auto& [n, ls] : H.labels)
        if (!ls.empty()) degs.push_back(n);

    for (int q = -1; q >= -top; --q) {
        // unknowns: theta(class (n,i)) coordinates over H^{n+q}
        struct Unknown {
            int n, i, j;
        };
        std::vector<Unknown> unknowns;
        for (int n : degs) {
            int tn = n + q;
            int tdim = H.dim(tn);
            if (tn < 0 || tdim == 0) continue;
            for (int i = 0; i < H.dim(n); ++i)
                for (int j = 0; j < tdim; ++j) unknowns.push_back({n, i, j});
        }
        std::vector<NegativeDerivationReport::DerivationOnH> basis;
        if (!unknowns.empty()) {
            // rows: Leibniz defect coordinates for each basis pair
            RowIndexer rows;
            struct Pair {
                int n1, i1, n2, i2;
            };
            std::vector<Pair> pairs;
            int32_t pair_id = 0;
            std::map<std::tuple<int, int, int, int>, int32_t> pair_ids;
            for (int n1 : degs) {
                for (int n2 : degs) {
                    if (n1 > n2 || n1 + n2 >= cap) continue;
                    if (n1 + n2 + q < 0) continue;
                    for (int i1 = 0; i1 < H.dim(n1); ++i1) {
                        int i2start = (n1 == n2) ? i1 : 0;
                        for (int i2 = i2start; i2 < H.dim(n2); ++i2) {
                            pairs.push_back({n1, i1, n2, i2});
                            pair_ids[{n1, i1, n2, i2}] = pair_id++;
                        }
                    }
                }
            }
            Echelon ech(true);
            std::vector<SparseVec> kernel;
            for (int32_t u = 0; u < int32_t(unknowns.size()); ++u) {
                auto [n, i, j] = unknowns[size_t(u)];
                std::map<int32_t, Rational> col;
                auto add_row = [&](int32_t pid, const SparseVec& coords, const Rational& coeff) {
                    for (auto& [k, c] : coords) {
                        int32_t rid = rows.id(pid, k);
                        col[rid] += coeff * c;
                        if (col[rid].is_zero()) col.erase(rid);
                    }
                };
                for (auto& pr : pairs) {
                    int32_t pid = pair_ids.at({pr.n1, pr.i1, pr.n2, pr.i2});
                    // theta(x y) term
                    if (pr.n1 + pr.n2 == n) {
                        auto pit = H.products.find({pr.n1, pr.i1, pr.n2, pr.i2});
                        if (pit != H.products.end()) {
                            for (auto& [k, c] : pit->second) {
                                if (int(k) == i) add_row(pid, {{int32_t(j), Rational(1)}}, c);
                            }
                        }
                    }
                    // -theta(x) y
                    if (pr.n1 == n && pr.i1 == i) {
                        SparseVec prod = H.product(n + q, {{int32_t(j), Rational(1)}}, pr.n2,
                                                   {{int32_t(pr.i2), Rational(1)}});
                        add_row(pid, prod, Rational(-1));
                    }
                    // -(-1)^{q n1} x theta(y)
                    if (pr.n2 == n && pr.i2 == i) {
                        SparseVec prod = H.product(pr.n1, {{int32_t(pr.i1), Rational(1)}}, n + q,
                                                   {{int32_t(j), Rational(1)}});
                        int sg = (q % 2 != 0 && pr.n1 % 2 != 0) ? 1 : -1;
                        add_row(pid, prod, Rational(sg));
                    }
                }
                SparseVec kv;
                if (!ech.insert(sv_from_map(col), u, &kv)) kernel.push_back(std::move(kv));
            }
            for (auto& kv : kernel) {
                NegativeDerivationReport::DerivationOnH der;
                for (auto& [u, c] : kv) {
                    auto [n, i, j] = unknowns[size_t(u)];
                    std::map<int32_t, Rational> cur = sv_to_map(der.values[{n, i}]);
                    cur[j] += c;
                    der.values[{n, i}] = sv_from_map(cur);
                }
                // drop zero rows
                for (auto it = der.values.begin(); it != der.values.end();)
                    it = it->second.empty() ? der.values.erase(it) : std::next(it);
                if (!der.values.empty()) basis.push_back(std::move(der));
            }
        }
        if (!basis.empty()) {
            report.halperin = false;
            report.basis_by_degree[q] = std::move(basis);
        } else {
            report.basis_by_degree[q] = {};
        }
    }
    return report;
}

TnczReport tncz_analyze(const RelativeModel& r, int cap) {
    TnczReport out;
    CDGA total = r.total_cdga();
    CohomologyCalculator ct(total), cf(r.fiber);
    CdgaMorphism proj("fiber_projection", r.projection);
    auto bad = check_chain_map(proj, total, r.fiber);
    if (bad)
        throw InternalError("fiber projection is not a chain map at '" +
                            total.algebra->gen(*bad).name + "'");
    CohomologyMorphism ind = induced_map(proj, ct, cf, cap);
    for (int n = 2; n < cap; ++n) out.dims[n] = {ct.dim(n), cf.dim(n)};
    auto failing = surjective_up_to(ind, cf, cap);
    out.tncz = !failing.has_value();
    out.failing_degree = failing;
    return out;
}

MapFormalityReport map_formality_certificate(const RelativeModel& r,
                                             const FormalityVerdict& base_verdict,
                                             const FormalityVerdict& total_verdict) {
    MapFormalityReport out;
    if (!base_verdict.formal) {
        out.reason = "base formality precondition fails (NonFormal at stage " +
                     std::to_string(base_verdict.stage) + ")";
        return out;
    }
    if (!total_verdict.formal) {
        out.reason = "total space formality precondition fails (NonFormal at stage " +
                     std::to_string(total_verdict.stage) + ")";
        return out;
    }
    FormalityVerdict loop = obstruction_loop(r.d_prime(), r.D_prime, r.cap, r.boundary);
    out.transcript = loop.transcript;
    if (loop.formal) {
        out.certified = true;
        out.reason = "relative filtered differential gauges to the relative bigraded differential";
    } else {
        out.reason = "a relative deformation stage resists gauge normalization (stage " +
                     std::to_string(loop.stage) + "); certificate inconclusive";
    }
    return out;
}

ReplayReport module_derivation_replay(const RelativeModel& r, int stage, int cap) {
    ReplayReport out;
    out.stage = stage;
    // preconditions: TNCZ and the fiber Halperin check
    TnczReport tncz = tncz_analyze(r, cap);
    if (!tncz.tncz)
        throw Error("replay requires a TNCZ model (surjectivity fails in degree " +
                    std::to_string(*tncz.failing_degree) + ")");
    CohomologyCalculator cf(r.fiber);
    FiniteGradedAlgebra HF = cf.presentation(cap);
    NegativeDerivationReport halperin = negative_derivations(HF, cap);
    if (!halperin.halperin)
        throw Error("replay requires a fiber satisfying the Halperin check");

    const AlgebraPtr& zalg = r.base.base.algebra;
    const AlgebraPtr& total = r.total_algebra();

    auto base_stages = deformation_stages(r.base.base.d, r.base.D_values, r.base.boundary);
    auto total_stages = deformation_stages(r.d_prime(), r.D_prime, r.boundary);
    Derivation d_i = base_stages.count(stage) ? base_stages.at(stage)
                                              : Derivation(zalg, zalg, 1, stage);
    Derivation d_i_prime = total_stages.count(stage)
                               ? total_stages.at(stage)
                               : Derivation(total, total, 1, stage);
    out.base_stage_zero = d_i.is_zero();
    out.total_stage_zero = d_i_prime.is_zero();

    // j'(d_i') = j(d_i): compare on base generators inside the total algebra
    out.restriction_matches = true;
    for (int32_t g = 0; g < zalg->size(); ++g) {
        Polynomial lhs = d_i_prime.value(g);
        Polynomial rhs = retag(*total, d_i.value(g));
        if (!(lhs == rhs)) {
            out.restriction_matches = false;
            out.detail = "restriction differs at generator '" + zalg->gen(g).name + "'";
            break;
        }
    }

    // upstairs: solve  d' o eta - eta o d = j(d_i)  with eta in Der_{stage-1}^0(Z, total)
    struct Col {
        int32_t gen;
        Monomial mono;
    };
    std::vector<Col> cols;
    for (int32_t g = 0; g < zalg->size(); ++g) {
        const GeneratorSymbol& gs = zalg->gen(g);
        int vl = gs.lower - (stage - 1);
        if (vl < 0) continue;
        for (const Monomial& mono : total->slice_basis(gs.degree, vl)) cols.push_back({g, mono});
    }
    RowIndexer rows;
    auto add_row = [&](int32_t g, const Polynomial& v, std::map<int32_t, Rational>& into,
                       const Rational& coeff) {
        int vd = zalg->gen(g).degree + 1;
        int vl = zalg->gen(g).lower - stage;
        for (auto& [m2, c] : v.terms()) {
            int32_t pos = total->slice_index(m2, vd, vl);
            if (pos < 0) throw InternalError("replay row outside slice");
            int32_t rid = rows.id(g, pos);
            into[rid] += coeff * c;
            if (into[rid].is_zero()) into.erase(rid);
        }
    };
    Echelon ech(true);
    for (int32_t j = 0; j < int32_t(cols.size()); ++j) {
        Derivation eta(zalg, total, 0, stage - 1);
        eta.set_value(cols[size_t(j)].gen,
                      Polynomial::single(*total, cols[size_t(j)].mono, Rational(1)));
        std::map<int32_t, Rational> colv;
        for (int32_t g = 0; g < zalg->size(); ++g) {
            Polynomial t = r.d_prime().apply(eta.value(g)) - eta.apply(r.base.base.d.value(g));
            if (!t.is_zero()) add_row(g, t, colv, Rational(1));
        }
        ech.insert(sv_from_map(colv), j);
    }
    std::map<int32_t, Rational> rhs;
    for (int32_t g = 0; g < zalg->size(); ++g) {
        Polynomial v = retag(*total, d_i.value(g));
        if (!v.is_zero()) add_row(g, v, rhs, Rational(1));
    }
    out.upstairs_exact = ech.solve(sv_from_map(rhs)).has_value();

    // downstairs: the absolute obstruction on the base
    ObstructionClass oc = obstruction_at(r.base.base.d, r.base.D_values, stage, r.base.boundary);
    out.downstairs_exact = oc.status != ObstructionClass::Status::NonExact;

    out.transfer_consistent = !out.upstairs_exact || out.downstairs_exact;
    return out;
}

}  // namespace sullivan
