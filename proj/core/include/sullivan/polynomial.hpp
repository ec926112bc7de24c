#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/rational.hpp"
#include "sullivan/sparse.hpp"

namespace sullivan {

// Element of a free CGA: terms sorted in canonical monomial order, no zero
// coefficients. Carries the owning algebra's id so cross-algebra arithmetic is
// rejected. The zero polynomial (id 0) is compatible with every algebra.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial unit(const FreeCGA& alg);
    static Polynomial generator(const FreeCGA& alg, int32_t gen);
    static Polynomial single(const FreeCGA& alg, Monomial m, Rational c);
    // Sorts and merges arbitrary term lists.
    static Polynomial from_terms(const FreeCGA& alg, std::vector<std::pair<Monomial, Rational>> ts);

    const std::vector<std::pair<Monomial, Rational>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    uint64_t algebra_id() const { return alg_id_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    friend class PolyBuilder;
    uint64_t alg_id_ = 0;
    std::vector<std::pair<Monomial, Rational>> terms_;
};

// Hash-accumulating builder for hot loops.
class PolyBuilder {
public:
    explicit PolyBuilder(const FreeCGA& alg) : alg_(&alg) {}
    void add(const Monomial& m, const Rational& c);
    void add(const Polynomial& p, const Rational& c = Rational(1));
    // add c * (a * b) with Koszul sign handling
    void add_product(const Monomial& a, const Monomial& b, const Rational& c);
    Polynomial build() const;
    bool empty() const;

private:
    const FreeCGA* alg_;
    std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

Polynomial multiply(const FreeCGA& alg, const Polynomial& a, const Polynomial& b);

// Degree of a homogeneous polynomial; nullopt when mixed (zero -> nullopt).
std::optional<int> homogeneous_degree(const FreeCGA& alg, const Polynomial& p);
std::optional<int> homogeneous_lower(const FreeCGA& alg, const Polynomial& p);

// Conversion to slice coordinates. Every monomial must lie in the slice.
SparseVec to_slice_vec(const FreeCGA& alg, const Polynomial& p, int degree, int lower);
SparseVec to_degree_vec(const FreeCGA& alg, const Polynomial& p, int degree);
Polynomial from_slice_vec(const FreeCGA& alg, const SparseVec& v, int degree, int lower);
Polynomial from_degree_vec(const FreeCGA& alg, const SparseVec& v, int degree);

// Re-tags a polynomial into another algebra whose generator prefix matches
// the polynomial's source (indices transfer verbatim).
Polynomial retag(const FreeCGA& target, const Polynomial& p);

std::string to_string(const FreeCGA& alg, const Monomial& m);
std::string to_string(const FreeCGA& alg, const Polynomial& p);

}  // namespace sullivan
