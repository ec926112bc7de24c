#include "sullivan/relative.hpp"

#include <algorithm>

namespace sullivan {

CDGA RelativeModel::total_cdga() const {
    return CDGA("total", total_algebra(), D_prime_derivation());
}

Derivation RelativeModel::D_prime_derivation() const {
    Derivation D(total_algebra(), total_algebra(), 1, std::nullopt);
    for (auto& [g, v] : D_prime)
        if (!v.is_zero()) D.set_value(g, v);
    return D;
}

namespace {

struct FiberParts {
    CDGA fiber;
    AlgebraMap projection;
};

FiberParts extract_fiber(const AlgebraPtr& total, const std::map<int32_t, Polynomial>& D_prime,
                         int z_count) {
    auto fiber_alg = std::make_shared<FreeCGA>(total->degree_cap());
    for (int32_t g = z_count; g < total->size(); ++g) {
        const GeneratorSymbol& gs = total->gen(g);
        fiber_alg->add_generator(gs.name, gs.degree, gs.lower);
    }
    AlgebraMap proj(total, fiber_alg);
    for (int32_t g = 0; g < total->size(); ++g) {
        if (g < z_count)
            proj.set_value(g, Polynomial{});
        else
            proj.set_value(g, Polynomial::generator(*fiber_alg, g - z_count));
    }
    Derivation dpp(fiber_alg, fiber_alg, 1, std::nullopt);
    for (int32_t g = z_count; g < total->size(); ++g) {
        auto it = D_prime.find(g);
        if (it == D_prime.end()) continue;
        Polynomial v = proj.apply(it->second);
        if (!v.is_zero()) dpp.set_value(g - z_count, std::move(v));
    }
    return {CDGA("fiber", fiber_alg, std::move(dpp)), std::move(proj)};
}

SparseVec apply_matrix(const ScalarMatrix& m, const SparseVec& v) {
    std::map<int32_t, Rational> out;
    for (auto& [j, c] : v) {
        for (int i = 0; i < m.rows(); ++i) {
            const Rational& e = m.at(i, int(j));
            if (e.is_zero()) continue;
            auto it = out.find(i);
            if (it == out.end()) {
                out.emplace(i, e * c);
            } else {
                it->second += e * c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return sv_from_map(out);
}

RelativeModel make_relative(FilteredModel base, BigradedModel relbg,
                            std::map<int32_t, Polynomial> D_prime, int cap, int z_count) {
    auto fp = extract_fiber(relbg.algebra, D_prime, z_count);
    return RelativeModel{std::move(base),
                         std::move(relbg),
                         std::move(D_prime),
                         std::move(fp.fiber),
                         std::move(fp.projection),
                         std::nullopt,
                         std::nullopt,
                         cap,
                         z_count};
}

}  // namespace

RelativeModel relative_bigraded_model(const CohomologyMorphism& phi, const BigradedModel& base,
                                      const FiniteGradedAlgebra& H_target, int cap) {
    if (cap > base.cap) throw Error("relative model cap exceeds base model cap");
    auto total = std::make_shared<FreeCGA>(cap + 1);
    BigradedSeed seed;
    seed.algebra = total;
    for (const auto& g : base.algebra->generators()) total->add_generator(g.name, g.degree, g.lower);
    for (int32_t g = 0; g < base.algebra->size(); ++g) {
        const Polynomial& dv = base.d.value(g);
        if (!dv.is_zero()) seed.d_values[g] = retag(*total, dv);
        auto it = base.rho.find(g);
        if (it != base.rho.end()) {
            int n = base.algebra->gen(g).degree;
            auto mit = phi.matrices.find(n);
            seed.rho[g] = mit == phi.matrices.end() ? SparseVec{} : apply_matrix(mit->second, it->second);
        }
    }
    BigradedModel relbg = bigraded_model_seeded(H_target, cap, seed);

    // the skeleton has no perturbation: D' = d', and the base filtered part is d
    std::map<int32_t, Polynomial> D_prime;
    for (int32_t g = 0; g < total->size(); ++g) D_prime[g] = relbg.d.value(g);
    FilteredModel base_fm{base, {}, AlgebraMap(base.algebra, base.algebra),
                          CDGA("base", base.algebra, base.d), cap};
    for (int32_t g = 0; g < base.algebra->size(); ++g) {
        base_fm.D_values[g] = base.d.value(g);
        base_fm.pi.set_value(g, Polynomial::generator(*base.algebra, g));
    }
    int z_count = base.algebra->size();
    return make_relative(std::move(base_fm), std::move(relbg), std::move(D_prime), cap, z_count);
}

RelativeModel relative_filtered_model(const CdgaMorphism& alpha, const CDGA& A, const CDGA& A2,
                                      int cap) {
    auto bad = check_chain_map(alpha, A, A2);
    if (bad)
        throw Error("relative_filtered_model: alpha is not a chain map at '" +
                    A.algebra->gen(*bad).name + "'");
    CohomologyCalculator calcA(A), calcA2(A2);
    FiniteGradedAlgebra H = calcA.presentation(cap + 1);
    FiniteGradedAlgebra H2 = calcA2.presentation(cap + 1);
    BigradedModel bg = bigraded_model(H, cap);
    FilteredModel fm = filtered_model(A, bg, &calcA);
    CohomologyMorphism phi = induced_map(alpha, calcA, calcA2, cap);

    RelativeModel rel = relative_bigraded_model(phi, bg, H2, cap);
    rel.base = fm;
    const AlgebraPtr& total = rel.total_algebra();
    int z_count = rel.z_count;

    std::map<int32_t, Polynomial> seed_D, seed_pi;
    for (int32_t g = 0; g < z_count; ++g) {
        seed_D[g] = retag(*total, fm.D_values.at(g));
        seed_pi[g] = alpha.map.apply(fm.pi.value(g));
    }
    FilteredModel total_fm = filtered_extend(A2, rel.total_bigraded, seed_D, seed_pi, z_count, &calcA2);

    rel.D_prime = total_fm.D_values;
    rel.boundary = total_fm.boundary;
    rel.pi_prime = total_fm.pi;
    rel.A_prime = A2;
    auto fp = extract_fiber(total, rel.D_prime, z_count);
    rel.fiber = std::move(fp.fiber);
    rel.projection = std::move(fp.projection);
    return rel;
}

AlgebraPtr make_total_algebra(const FilteredModel& base, const BigradedModel& fiber) {
    auto total = std::make_shared<FreeCGA>(base.base.algebra->degree_cap());
    for (const auto& g : base.base.algebra->generators())
        total->add_generator(g.name, g.degree, g.lower);
    for (const auto& g : fiber.algebra->generators()) {
        std::string name = g.name;
        while (total->find(name)) name += "_f";
        total->add_generator(name, g.degree, g.lower);
    }
    return total;
}

RelativeModel assemble_fibration(const FilteredModel& base, const BigradedModel& fiber,
                                 AlgebraPtr total, const std::map<int32_t, Polynomial>& theta_in,
                                 const std::map<int32_t, Polynomial>& twist) {
    int cap = base.cap;
    if (fiber.cap != cap) throw Error("fibration: base and fiber cap mismatch");
    if (!theta_in.empty() && !twist.empty())
        throw Error("fibration: give either theta values or twist terms, not both");
    int z_count = base.base.algebra->size();
    const FreeCGA& falg = *fiber.algebra;

    std::map<int32_t, Polynomial> D_prime;
    for (int32_t g = 0; g < z_count; ++g) {
        auto it = base.D_values.find(g);
        D_prime[g] = it == base.D_values.end() ? Polynomial{} : retag(*total, it->second);
    }
    auto fiber_to_total = [&](const Polynomial& p) {
        std::vector<std::pair<Monomial, Rational>> ts;
        ts.reserve(p.terms().size());
        for (auto& [m, c] : p.terms()) {
            Monomial sh = m;
            for (auto& [g, e] : sh.factors) g += z_count;
            ts.emplace_back(std::move(sh), c);
        }
        return Polynomial::from_terms(*total, std::move(ts));
    };
    for (int32_t g = 0; g < falg.size(); ++g)
        D_prime[z_count + g] = fiber_to_total(fiber.d.value(g));

    if (!theta_in.empty()) {
        if (z_count != 1 || base.base.algebra->gen(0).degree % 2 == 0 ||
            !base.D_values.at(0).is_zero())
            throw Error("fibration theta requires a single-generator odd-sphere base");
        int k = base.base.algebra->gen(0).degree;
        int q = 1 - k;
        int shift = -1;
        for (auto& [g, v] : theta_in) {
            if (v.is_zero()) continue;
            auto lo = homogeneous_lower(falg, v);
            auto dg = homogeneous_degree(falg, v);
            if (!lo || !dg) throw Error("fibration: theta value must be bihomogeneous");
            if (*dg != falg.gen(g).degree + q)
                throw Error("fibration: theta value on '" + falg.gen(g).name +
                            "' has the wrong degree for the base sphere");
            int s = falg.gen(g).lower - *lo;
            if (shift == -1) shift = s;
            if (s != shift) throw Error("fibration: theta values have mixed lower shifts");
        }
        if (shift < 2) throw Error("fibration: theta must lower the lower degree by at least 2");
        Derivation theta(fiber.algebra, fiber.algebra, q, shift);
        for (auto& [g, v] : theta_in)
            if (!v.is_zero()) theta.set_value(g, v);
        // extend closed over machine generators, in (lower, degree) order
        std::vector<int32_t> order;
        for (int32_t g = 0; g < falg.size(); ++g) order.push_back(g);
        std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
            const auto &ga = falg.gen(a), &gb = falg.gen(b);
            if (ga.lower != gb.lower) return ga.lower < gb.lower;
            if (ga.degree != gb.degree) return ga.degree < gb.degree;
            return a < b;
        });
        std::map<std::pair<int, int>, Echelon> image_cache;
        for (int32_t g : order) {
            const GeneratorSymbol& gs = falg.gen(g);
            if (gs.lower < shift + 1 || theta_in.count(g)) continue;
            Polynomial rhs = theta.apply(fiber.d.value(g));
            int vdeg = gs.degree + q, vlow = gs.lower - shift;
            if (rhs.is_zero()) continue;  // theta(g) = 0 works
            auto key = std::make_pair(vdeg, vlow);
            auto itc = image_cache.find(key);
            if (itc == image_cache.end()) {
                Echelon ech(true);
                const auto& monos = falg.slice_basis(vdeg, vlow);
                for (int32_t j = 0; j < int32_t(monos.size()); ++j) {
                    Polynomial dm = fiber.d.apply(monos[size_t(j)]);
                    ech.insert(to_slice_vec(falg, dm, vdeg + 1, vlow - 1), j);
                }
                itc = image_cache.emplace(key, std::move(ech)).first;
            }
            auto x = itc->second.solve(to_slice_vec(falg, rhs, vdeg + 1, vlow - 1));
            if (!x)
                throw Error("fibration: theta cannot be extended closed at generator '" + gs.name +
                            "' (theta(d " + gs.name + ") is not exact)");
            const auto& monos = falg.slice_basis(vdeg, vlow);
            std::vector<std::pair<Monomial, Rational>> ts;
            for (auto& [j, c] : *x) ts.emplace_back(monos[size_t(j)], c);
            Polynomial val = Polynomial::from_terms(falg, std::move(ts));
            if (!val.is_zero()) theta.set_value(g, std::move(val));
        }
        Derivation br = bracket(fiber.d, theta);
        for (int32_t g = 0; g < falg.size(); ++g) {
            if (falg.gen(g).degree + 1 + q > falg.degree_cap()) continue;
            if (!br.value(g).is_zero())
                throw Error("fibration: [d, theta] != 0 at fiber generator '" + falg.gen(g).name +
                            "'");
        }
        Polynomial v_gen = Polynomial::generator(*total, 0);
        for (int32_t g = 0; g < falg.size(); ++g) {
            const Polynomial& tv = theta.value(g);
            if (tv.is_zero()) continue;
            Polynomial term = multiply(*total, v_gen, fiber_to_total(tv));
            D_prime[z_count + g] = D_prime[z_count + g] + term;
        }
    } else {
        for (auto& [g, v] : twist) {
            if (v.is_zero()) continue;
            if (v.algebra_id() != total->id())
                throw Error("fibration: twist value must live in the total algebra");
            const GeneratorSymbol& gs = falg.gen(g);
            auto dg = homogeneous_degree(*total, v);
            if (!dg || *dg != gs.degree + 1)
                throw Error("fibration: twist on '" + gs.name + "' must be homogeneous of degree " +
                            std::to_string(gs.degree + 1));
            for (auto& [m, c] : v.terms()) {
                int sh = gs.lower - total->mono_lower(m);
                if (sh < 1)
                    throw Error("fibration: twist term on '" + gs.name +
                                "' does not lower the lower degree");
            }
            D_prime[z_count + g] = D_prime[z_count + g] + v;
        }
    }

    // the relative bigraded structure: d' = lower-(-1) part of D'
    BigradedModel relbg{total, Derivation(total, total, 1, 1), {}, FiniteGradedAlgebra{}, cap,
                        z_count};
    for (auto& [g, Dv] : D_prime) {
        int glow = total->gen(g).lower;
        std::vector<std::pair<Monomial, Rational>> ts;
        for (auto& [m, c] : Dv.terms())
            if (total->mono_lower(m) == glow - 1) ts.emplace_back(m, c);
        Polynomial part = Polynomial::from_terms(*total, std::move(ts));
        if (!part.is_zero()) relbg.d.set_value(g, std::move(part));
    }

    // D'^2 = 0 within cap
    {
        Derivation D(total, total, 1, std::nullopt);
        for (auto& [g, v] : D_prime)
            if (!v.is_zero()) D.set_value(g, v);
        for (int32_t g = 0; g < total->size(); ++g) {
            if (total->gen(g).degree + 2 > total->degree_cap()) continue;
            Polynomial r = D.apply(D.value(g));
            if (!r.is_zero())
                throw Error("fibration: D'^2 != 0 at generator '" + total->gen(g).name + "'");
        }
    }

    return make_relative(base, std::move(relbg), std::move(D_prime), cap, z_count);
}

CDGA fiber_model(const RelativeModel& r) { return r.fiber; }

}  // namespace sullivan
