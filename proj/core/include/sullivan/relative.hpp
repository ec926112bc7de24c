#pragma once

#include "sullivan/filtered.hpp"

namespace sullivan {

// Relative (bigraded / filtered) model of a morphism: the base model ΛZ sits
// as a generator prefix inside the total algebra ΛZ ⊗ ΛX. `total_bigraded`
// carries the relative bigraded structure (algebra, d', lower grading, and —
// when built from a morphism — rho' and the target cohomology); D_prime is
// the full perturbed differential. The fiber CDGA (ΛX, D'') is obtained by
// killing the Z-ideal.
struct RelativeModel {
    FilteredModel base;             // (Lambda Z, D) -> A
    BigradedModel total_bigraded;   // seeded over the base; d' homogeneous of lower degree -1
    std::map<int32_t, Polynomial> D_prime;
    CDGA fiber;                     // (Lambda X, D'') on its own algebra
    AlgebraMap projection;          // total -> fiber (Z |-> 0)
    std::optional<AlgebraMap> pi_prime;  // total -> A' when built from a morphism
    std::optional<CDGA> A_prime;
    int cap = 0;
    int z_count = 0;
    std::set<int32_t> boundary;  // truncation-boundary generators of the total extension

    const AlgebraPtr& total_algebra() const { return total_bigraded.algebra; }
    const Derivation& d_prime() const { return total_bigraded.d; }
    CDGA total_cdga() const;
    Derivation D_prime_derivation() const;
};

// Relative bigraded model of phi : H -> H' over a bigraded model of H.
// X-generators are added so the total resolves H'; D' = d' (no perturbation).
RelativeModel relative_bigraded_model(const CohomologyMorphism& phi, const BigradedModel& base,
                                      const FiniteGradedAlgebra& H_target, int cap);

// Relative filtered model of a CDGA morphism alpha : A -> A'. Builds the
// absolute models of A, the relative bigraded model of alpha^*, then extends
// the base's perturbed differential and quasi-isomorphism over the X part.
RelativeModel relative_filtered_model(const CdgaMorphism& alpha, const CDGA& A, const CDGA& A2,
                                      int cap);

// The fiber CDGA (Lambda X, D'') with its inherited lower grading.
CDGA fiber_model(const RelativeModel& r);

// The total algebra of a fibration: base model generators as a prefix, fiber
// model generators after them. Names must be disjoint.
AlgebraPtr make_total_algebra(const FilteredModel& base, const BigradedModel& fiber);

// Assembles the relative model of a fibration document over a pre-built total
// algebra. Exactly one of theta / twist may be nonempty:
//   - theta: a closed derivation of the fiber model (values in the fiber
//     algebra, keyed by fiber generator index); the total differential is
//     D'x = d''x + v theta(x) over a single-generator odd-sphere base, and
//     theta is extended closed over the machine-built fiber generators.
//   - twist: explicit extra terms of D' (values in the total algebra, keyed
//     by fiber generator index); every term must lower the lower degree by
//     at least 1. Shift-1 terms belong to d'.
// Validates D'^2 = 0 within cap. The returned model has no rho'/H' data.
RelativeModel assemble_fibration(const FilteredModel& base, const BigradedModel& fiber,
                                 AlgebraPtr total, const std::map<int32_t, Polynomial>& theta,
                                 const std::map<int32_t, Polynomial>& twist);

}  // namespace sullivan
