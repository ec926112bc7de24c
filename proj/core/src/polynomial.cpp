#include "sullivan/polynomial.hpp"

#include <algorithm>

namespace sullivan {

namespace {
void check_compatible(uint64_t a, uint64_t b) {
    if (a != 0 && b != 0 && a != b)
        throw AlgebraMismatch("operands belong to different algebras");
}
}  // namespace

Polynomial Polynomial::unit(const FreeCGA& alg) {
    Polynomial p;
    p.alg_id_ = alg.id();
    p.terms_.emplace_back(Monomial{}, Rational(1));
    return p;
}

Polynomial Polynomial::generator(const FreeCGA& alg, int32_t gen) {
    Polynomial p;
    p.alg_id_ = alg.id();
    Monomial m;
    m.factors.emplace_back(gen, 1);
    p.terms_.emplace_back(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::single(const FreeCGA& alg, Monomial m, Rational c) {
    Polynomial p;
    if (c.is_zero()) return p;
    p.alg_id_ = alg.id();
    p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
}

Polynomial Polynomial::from_terms(const FreeCGA& alg,
                                  std::vector<std::pair<Monomial, Rational>> ts) {
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        return monomial_cmp(a.first, b.first) < 0;
    });
    Polynomial p;
    p.alg_id_ = alg.id();
    for (auto& [m, c] : ts) {
        if (!p.terms_.empty() && p.terms_.back().first == m) {
            p.terms_.back().second += c;
            if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
        } else if (!c.is_zero()) {
            p.terms_.emplace_back(std::move(m), std::move(c));
        }
    }
    if (p.terms_.empty()) p.alg_id_ = 0;
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_compatible(a.alg_id_, b.alg_id_);
    Polynomial out;
    out.alg_id_ = a.alg_id_ ? a.alg_id_ : b.alg_id_;
    auto &ta = a.terms_, &tb = b.terms_;
    size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        int cmp;
        if (i == ta.size())
            cmp = 1;
        else if (j == tb.size())
            cmp = -1;
        else
            cmp = monomial_cmp(ta[i].first, tb[j].first);
        if (cmp < 0) {
            out.terms_.push_back(ta[i++]);
        } else if (cmp > 0) {
            out.terms_.push_back(tb[j++]);
        } else {
            Rational c = ta[i].second + tb[j].second;
            if (!c.is_zero()) out.terms_.emplace_back(ta[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    if (out.terms_.empty()) out.alg_id_ = 0;
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out;
    if (c.is_zero()) return out;
    out.alg_id_ = alg_id_;
    out.terms_ = terms_;
    for (auto& [m, x] : out.terms_) x *= c;
    return out;
}

void PolyBuilder::add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = acc_.find(m);
    if (it == acc_.end()) {
        acc_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) acc_.erase(it);
    }
}

void PolyBuilder::add(const Polynomial& p, const Rational& c) {
    for (auto& [m, x] : p.terms()) add(m, c * x);
}

void PolyBuilder::add_product(const Monomial& a, const Monomial& b, const Rational& c) {
    auto r = monomial_product(*alg_, a, b);
    if (!r) return;
    add(r->second, r->first < 0 ? -c : c);
}

bool PolyBuilder::empty() const {
    return acc_.empty();
}

Polynomial PolyBuilder::build() const {
    std::vector<std::pair<Monomial, Rational>> ts(acc_.begin(), acc_.end());
    return Polynomial::from_terms(*alg_, std::move(ts));
}

Polynomial multiply(const FreeCGA& alg, const Polynomial& a, const Polynomial& b) {
    if (a.algebra_id() && a.algebra_id() != alg.id())
        throw AlgebraMismatch("left factor from a different algebra");
    if (b.algebra_id() && b.algebra_id() != alg.id())
        throw AlgebraMismatch("right factor from a different algebra");
    PolyBuilder acc(alg);
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) acc.add_product(ma, mb, ca * cb);
    return acc.build();
}

std::optional<int> homogeneous_degree(const FreeCGA& alg, const Polynomial& p) {
    if (p.is_zero()) return std::nullopt;
    int d = alg.mono_degree(p.terms().front().first);
    for (auto& [m, c] : p.terms())
        if (alg.mono_degree(m) != d) return std::nullopt;
    return d;
}

std::optional<int> homogeneous_lower(const FreeCGA& alg, const Polynomial& p) {
    if (p.is_zero()) return std::nullopt;
    int l = alg.mono_lower(p.terms().front().first);
    for (auto& [m, c] : p.terms())
        if (alg.mono_lower(m) != l) return std::nullopt;
    return l;
}

SparseVec to_slice_vec(const FreeCGA& alg, const Polynomial& p, int degree, int lower) {
    std::map<int32_t, Rational> m;
    for (auto& [mono, c] : p.terms()) {
        int32_t i = alg.slice_index(mono, degree, lower);
        if (i < 0) throw Error("monomial outside slice (" + std::to_string(degree) + ", " +
                               std::to_string(lower) + "): " + to_string(alg, mono));
        m.emplace(i, c);
    }
    return sv_from_map(m);
}

SparseVec to_degree_vec(const FreeCGA& alg, const Polynomial& p, int degree) {
    std::map<int32_t, Rational> m;
    for (auto& [mono, c] : p.terms()) {
        int32_t i = alg.degree_index(mono, degree);
        if (i < 0) throw Error("monomial outside degree " + std::to_string(degree) + ": " +
                               to_string(alg, mono));
        m.emplace(i, c);
    }
    return sv_from_map(m);
}

Polynomial from_slice_vec(const FreeCGA& alg, const SparseVec& v, int degree, int lower) {
    const auto& basis = alg.slice_basis(degree, lower);
    std::vector<std::pair<Monomial, Rational>> ts;
    ts.reserve(v.size());
    for (auto& [i, c] : v) ts.emplace_back(basis[size_t(i)], c);
    return Polynomial::from_terms(alg, std::move(ts));
}

Polynomial from_degree_vec(const FreeCGA& alg, const SparseVec& v, int degree) {
    const auto& basis = alg.degree_basis(degree);
    std::vector<std::pair<Monomial, Rational>> ts;
    ts.reserve(v.size());
    for (auto& [i, c] : v) ts.emplace_back(basis[size_t(i)], c);
    return Polynomial::from_terms(alg, std::move(ts));
}

Polynomial retag(const FreeCGA& target, const Polynomial& p) {
    std::vector<std::pair<Monomial, Rational>> ts(p.terms().begin(), p.terms().end());
    return Polynomial::from_terms(target, std::move(ts));
}

std::string to_string(const FreeCGA& alg, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string s;
    for (auto& [g, e] : m.factors) {
        if (!s.empty()) s += "*";
        s += alg.gen(g).name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string to_string(const FreeCGA& alg, const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += a.sign() < 0 ? " - " : " + ";
            if (a.sign() < 0) a = -a;
        }
        if (m.is_unit()) {
            s += a.str();
        } else {
            if (!a.is_one()) s += a.str() + "*";
            s += to_string(alg, m);
        }
        first = false;
    }
    return s;
}

}  // namespace sullivan
