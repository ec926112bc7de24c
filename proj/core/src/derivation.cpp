#include "sullivan/derivation.hpp"

namespace sullivan {

namespace {
const Polynomial kZero{};

void check_prefix(const FreeCGA& domain, const FreeCGA& codomain) {
    if (domain.id() == codomain.id()) return;
    if (codomain.size() < domain.size())
        throw AlgebraMismatch("codomain does not contain the domain's generators");
    for (int i = 0; i < domain.size(); ++i) {
        const auto &a = domain.gen(i), &b = codomain.gen(i);
        if (a.name != b.name || a.degree != b.degree || a.lower != b.lower)
            throw AlgebraMismatch("codomain generator prefix differs from domain at '" + a.name + "'");
    }
}
}  // namespace

Derivation::Derivation(ConstAlgebraPtr domain, ConstAlgebraPtr codomain, int degree_shift,
                       std::optional<int> lower_shift)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), q_(degree_shift), p_(lower_shift) {
    check_prefix(*domain_, *codomain_);
}

void Derivation::set_value(int32_t gen, Polynomial v) {
    if (v.is_zero()) {
        values_.erase(gen);
        return;
    }
    if (v.algebra_id() != codomain_->id())
        throw AlgebraMismatch("derivation value from a different algebra");
    const GeneratorSymbol& g = domain_->gen(gen);
    auto deg = homogeneous_degree(*codomain_, v);
    if (!deg || *deg != g.degree + q_)
        throw Error("derivation value on '" + g.name + "' is not homogeneous of degree " +
                    std::to_string(g.degree + q_));
    if (p_) {
        auto low = homogeneous_lower(*codomain_, v);
        if (!low || *low != g.lower - *p_)
            throw Error("derivation value on '" + g.name + "' is not homogeneous of lower degree " +
                        std::to_string(g.lower - *p_));
    }
    values_[gen] = std::move(v);
}

const Polynomial& Derivation::value(int32_t gen) const {
    auto it = values_.find(gen);
    return it == values_.end() ? kZero : it->second;
}

bool Derivation::is_zero() const {
    for (auto& [g, v] : values_)
        if (!v.is_zero()) return false;
    return true;
}

Polynomial Derivation::apply(const Monomial& m) const {
    const FreeCGA& cod = *codomain_;
    PolyBuilder acc(cod);
    int out_deg = domain_->mono_degree(m) + q_;
    if (out_deg > cod.degree_cap())
        throw CapError("derivation image degree " + std::to_string(out_deg) + " overflows cap " +
                       std::to_string(cod.degree_cap()));
    int prefix_deg = 0;
    for (size_t i = 0; i < m.factors.size(); ++i) {
        auto [g, e] = m.factors[i];
        const Polynomial& v = value(g);
        if (!v.is_zero()) {
            // prefix = factors before i; rest = g^{e-1} * factors after i
            Monomial prefix, rest;
            prefix.factors.assign(m.factors.begin(), m.factors.begin() + long(i));
            if (e > 1) rest.factors.emplace_back(g, e - 1);
            rest.factors.insert(rest.factors.end(), m.factors.begin() + long(i) + 1, m.factors.end());
            int sign = (q_ % 2 != 0 && prefix_deg % 2 != 0) ? -1 : 1;
            Rational coeff = Rational(e * sign);
            // prefix * v * rest
            for (auto& [mv, cv] : v.terms()) {
                auto pm = monomial_product(cod, prefix, mv);
                if (!pm) continue;
                auto fm = monomial_product(cod, pm->second, rest);
                if (!fm) continue;
                int s = pm->first * fm->first;
                acc.add(fm->second, coeff * cv * Rational(s));
            }
        }
        prefix_deg += domain_->gen(g).degree * e;
    }
    return acc.build();
}

Polynomial Derivation::apply(const Polynomial& p) const {
    if (p.algebra_id() != 0 && p.algebra_id() != domain_->id())
        throw AlgebraMismatch("derivation applied to a polynomial from a different algebra");
    PolyBuilder acc(*codomain_);
    for (auto& [m, c] : p.terms()) acc.add(apply(m), c);
    return acc.build();
}

Derivation bracket(const Derivation& a, const Derivation& b) {
    if (a.domain().id() != b.domain().id() || a.codomain().id() != b.codomain().id())
        throw AlgebraMismatch("bracket of derivations on different algebras");
    if (a.domain().id() != a.codomain().id())
        throw AlgebraMismatch("bracket requires endomorphism derivations");
    int q = a.degree_shift() + b.degree_shift();
    std::optional<int> p;
    if (a.lower_shift() && b.lower_shift()) p = *a.lower_shift() + *b.lower_shift();
    Derivation out(a.domain_ptr(), a.codomain_ptr(), q, p);
    int sign = (a.degree_shift() % 2 != 0 && b.degree_shift() % 2 != 0) ? -1 : 1;
    for (int g = 0; g < a.domain().size(); ++g) {
        // values past the cap are not representable; the bracket is truncated
        if (a.domain().gen(g).degree + q > a.codomain().degree_cap()) continue;
        Polynomial v = a.apply(b.value(g)) - b.apply(a.value(g)).scaled(Rational(sign));
        if (!v.is_zero()) out.set_value(g, std::move(v));
    }
    return out;
}

void AlgebraMap::set_value(int32_t gen, Polynomial v) {
    if (!v.is_zero()) {
        if (v.algebra_id() != dst_->id())
            throw AlgebraMismatch("map value from a different algebra");
        auto deg = homogeneous_degree(*dst_, v);
        if (!deg || *deg != src_->gen(gen).degree)
            throw Error("map value on '" + src_->gen(gen).name + "' does not preserve degree");
    }
    values_[gen] = std::move(v);
}

const Polynomial& AlgebraMap::value(int32_t gen) const {
    auto it = values_.find(gen);
    if (it == values_.end())
        throw Error("algebra map has no value on generator '" + src_->gen(gen).name + "'");
    return it->second;
}

Polynomial AlgebraMap::apply(const Monomial& m) const {
    Polynomial out = Polynomial::unit(*dst_);
    for (auto& [g, e] : m.factors) {
        const Polynomial& v = value(g);
        for (int k = 0; k < e; ++k) {
            out = multiply(*dst_, out, v);
            if (out.is_zero()) return out;
        }
    }
    return out;
}

Polynomial AlgebraMap::apply(const Polynomial& p) const {
    if (p.algebra_id() != 0 && p.algebra_id() != src_->id())
        throw AlgebraMismatch("map applied to a polynomial from a different algebra");
    PolyBuilder acc(*dst_);
    for (auto& [m, c] : p.terms()) acc.add(apply(m), c);
    return acc.build();
}

AlgebraMap exp_map(const Derivation& mu, int sign) {
    if (mu.degree_shift() != 0) throw Error("exp requires a degree-0 derivation");
    auto alg = mu.domain_ptr();
    AlgebraMap phi(alg, alg);
    for (int g = 0; g < alg->size(); ++g) {
        Polynomial acc = Polynomial::generator(*alg, g);
        Polynomial term = acc;
        Rational fact(1);
        int k = 0;
        while (true) {
            term = mu.apply(term);
            if (term.is_zero()) break;
            ++k;
            if (k > alg->degree_cap())
                throw InternalError("exp of a non-nilpotent derivation");
            fact *= Rational(sign, unsigned(k));
            acc = acc + term.scaled(fact);
        }
        phi.set_value(g, std::move(acc));
    }
    return phi;
}

}  // namespace sullivan
