#pragma once

#include <map>
#include <optional>

#include "sullivan/polynomial.hpp"

namespace sullivan {

// A derivation of a free CGA (or into a module algebra over it), determined by
// its values on generators and extended by the graded Leibniz rule
//   theta(a b) = theta(a) b + (-1)^{q |a|} a theta(b),   q = degree shift.
//
// When the codomain differs from the domain, the codomain must contain the
// domain's generators as a prefix (same names, degrees, lower degrees); the
// domain then acts on the codomain through that inclusion.
//
// `lower_shift`, when set, asserts that every value is homogeneous of lower
// degree (gen.lower - lower_shift); perturbed differentials leave it unset.
class Derivation {
public:
    Derivation(ConstAlgebraPtr domain, ConstAlgebraPtr codomain, int degree_shift,
               std::optional<int> lower_shift);
    Derivation(ConstAlgebraPtr alg, int degree_shift, std::optional<int> lower_shift)
        : Derivation(alg, alg, degree_shift, lower_shift) {}

    const FreeCGA& domain() const { return *domain_; }
    const FreeCGA& codomain() const { return *codomain_; }
    ConstAlgebraPtr domain_ptr() const { return domain_; }
    ConstAlgebraPtr codomain_ptr() const { return codomain_; }
    int degree_shift() const { return q_; }
    std::optional<int> lower_shift() const { return p_; }

    void set_value(int32_t gen, Polynomial v);
    const Polynomial& value(int32_t gen) const;
    const std::map<int32_t, Polynomial>& values() const { return values_; }
    bool is_zero() const;

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply(const Monomial& m) const;

private:
    ConstAlgebraPtr domain_, codomain_;
    int q_;
    std::optional<int> p_;
    std::map<int32_t, Polynomial> values_;
};

// Graded commutator [a, b] = a b - (-1)^{q_a q_b} b a. Domains must coincide.
Derivation bracket(const Derivation& a, const Derivation& b);

// Multiplicative map between free CGAs determined by generator values.
class AlgebraMap {
public:
    AlgebraMap(ConstAlgebraPtr src, ConstAlgebraPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {}

    const FreeCGA& source() const { return *src_; }
    const FreeCGA& target() const { return *dst_; }
    ConstAlgebraPtr source_ptr() const { return src_; }
    ConstAlgebraPtr target_ptr() const { return dst_; }

    void set_value(int32_t gen, Polynomial v);
    bool defined(int32_t gen) const { return values_.count(gen) != 0; }
    const Polynomial& value(int32_t gen) const;
    const std::map<int32_t, Polynomial>& values() const { return values_; }

    Polynomial apply(const Polynomial& p) const;
    Polynomial apply(const Monomial& m) const;

private:
    ConstAlgebraPtr src_, dst_;
    std::map<int32_t, Polynomial> values_;
};

// exp(sign * mu) as an algebra map; mu must be nilpotent on every generator
// (it strictly lowers the lower degree).
AlgebraMap exp_map(const Derivation& mu, int sign = 1);

}  // namespace sullivan
