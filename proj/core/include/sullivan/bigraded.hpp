#pragma once

#include "sullivan/cohomology.hpp"

namespace sullivan {

// Bigraded model (Lambda V, d) of a finite graded algebra H:
//   - generators carry a lower grading, d is homogeneous of lower degree -1
//     (so d(V_0) = 0),
//   - rho maps lower-0 generators to H-classes and kills V_{>0},
//   - H_p(Lambda V, d) = 0 for p > 0 and rho* is an isomorphism in lower
//     degree 0, for all total degrees < cap.
//
// Generators of lower degree 0 exist up to degree cap-1 (surjectivity of rho*)
// and generators of lower degree >= 1 up to degree cap-2 (they kill classes
// one degree up).
struct BigradedModel {
    AlgebraPtr algebra;
    Derivation d;  // degree +1, lower -1
    std::map<int32_t, SparseVec> rho;
    FiniteGradedAlgebra H;
    int cap = 0;
    int seed_count = 0;  // generators present before construction (relative base, data docs)
};

// Pre-existing generators for seeded construction: the relative case (the
// base model's generators) and partial bigraded data from documents.
struct BigradedSeed {
    AlgebraPtr algebra;  // carries the seed generators; cap must equal the build cap
    std::map<int32_t, Polynomial> d_values;
    std::map<int32_t, SparseVec> rho;  // classes of the lower-0 seed generators
};

BigradedModel bigraded_model(const FiniteGradedAlgebra& H, int cap);
BigradedModel bigraded_model_seeded(const FiniteGradedAlgebra& H, int cap, const BigradedSeed& seed);

// rho extended multiplicatively to a lower-0 monomial, as H-coordinates.
SparseVec rho_of_monomial(const FreeCGA& alg, const std::map<int32_t, SparseVec>& rho,
                          const FiniteGradedAlgebra& H, const Monomial& m);

// dim H_p^n of a lower-graded CDGA slice (p >= 1, n + 1 <= cap). Zero on a
// valid bigraded model; exposed so tests can assert exactness directly.
int defect_dimension(const FreeCGA& alg, const Derivation& d, int n, int p);

// The algebra resolved by lower-graded data: H_0 = Lambda V_0 / d((Lambda V)_1),
// with deterministic representatives, products, and indecomposables.
// This recovers H for any (partial) bigraded model, e.g. wedge data documents.
FiniteGradedAlgebra resolved_algebra(const FreeCGA& alg, const Derivation& d, int cap);

// Coordinates of a lower-0 element over the resolved basis at the given
// degree (reduction modulo the ideal d((Lambda V)_1)).
SparseVec resolved_coordinates(const FreeCGA& alg, const Derivation& d,
                               const FiniteGradedAlgebra& H, const Polynomial& p, int degree);

// Per-degree dimensions of V_p (generator counts by (degree, lower)).
std::map<std::pair<int, int>, int> generator_profile(const BigradedModel& m);

}  // namespace sullivan
