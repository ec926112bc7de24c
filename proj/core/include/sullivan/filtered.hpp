#pragma once

#include <set>

#include "sullivan/bigraded.hpp"

namespace sullivan {

// Filtered model of a CDGA (A, d_A): the bigraded model of H(A) equipped with
// a perturbed differential D = d + d_2 + d_3 + ... (each d_i lowering the
// lower degree by i) and a quasi-isomorphism pi : (Lambda V, D) -> A.
struct FilteredModel {
    BigradedModel base;
    std::map<int32_t, Polynomial> D_values;
    AlgebraMap pi;
    CDGA A;
    int cap = 0;
    // Topmost-degree generators whose lift needed exactness past the
    // truncation; they carry D = d and an unconstrained pi, and are excluded
    // from obstruction equations (dropping equations keeps NonFormal verdicts
    // conclusive).
    std::set<int32_t> boundary;

    // D assembled as a derivation (degree +1, no lower homogeneity).
    Derivation D() const;
    CDGA model_cdga() const;  // (Lambda V, D)
};

// Builds the filtered model over a previously constructed bigraded model of
// presentation(A). Solves, generator by generator in (lower, degree) order,
// the joint linear problem
//     D(d v + xi) = 0,   d_A(pi v) = pi(d v + xi),   xi in (Lambda V)_{<= p-2},
// factoring the system once per (degree, lower) group.
// `full_pi = false` skips pi-values on generators no later lift consults
// (degrees past the last nonvanishing H^{n+1}(A)); the obstruction machinery
// never reads them, so verdict pipelines use the cheaper form.
FilteredModel filtered_model(const CDGA& A, const BigradedModel& bg,
                             CohomologyCalculator* calc = nullptr, bool full_pi = true);

// Extends an existing filtered structure (seed prefix of the model's
// generators with D and pi already fixed) over the remaining generators;
// used by the relative construction. When H^{n+1}(A) vanishes the correction
// and pi-value decouple, so the solve drops to the model side plus one
// primitive lookup in A (shared through `calc`).
FilteredModel filtered_extend(const CDGA& A, const BigradedModel& bg,
                              const std::map<int32_t, Polynomial>& seed_D,
                              const std::map<int32_t, Polynomial>& seed_pi, int seed_count,
                              CohomologyCalculator* calc = nullptr, bool full_pi = true);

// Splits D - d into lower-homogeneous stages; keys are the stages i >= 2 with
// d_i != 0. Throws InternalError if a component violates the filtered shape.
std::map<int, Derivation> deformation_stages(const Derivation& d,
                                             const std::map<int32_t, Polynomial>& D_values,
                                             const std::set<int32_t>& skip = {});
std::map<int, Derivation> deformation_stages(const FilteredModel& f);

// Conjugates D by exp(mu) (an algebra automorphism): D' = exp(mu) D exp(-mu).
std::map<int32_t, Polynomial> gauge_conjugate(const Derivation& d,
                                              const std::map<int32_t, Polynomial>& D_values,
                                              const Derivation& mu);

// Gauge step on a filtered model: requires [d, mu] = d_stage (rejected
// otherwise); returns the model with stages <= stage removed and pi
// transported along exp(-mu).
FilteredModel gauge_normalize(const FilteredModel& f, int stage, const Derivation& mu);

// First degree < cap where pi fails to induce a cohomology isomorphism
// (nullopt when pi is a quasi-isomorphism through cap-1).
std::optional<int> quasi_iso_failure(const FilteredModel& f);

}  // namespace sullivan
