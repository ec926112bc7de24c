#pragma once

#include "sullivan/relative.hpp"

namespace sullivan {

// A materialized slice Der_p^q of the derivation complex of a bigraded model:
// derivations lowering the lower degree by p and raising the total degree by
// q, with the matrix of the differential D(theta) = [d, theta] into
// Der_{p+1}^{q+1}. Basis elements are (generator, value-monomial) pairs.
struct DerivationSlice {
    int p = 0, q = 0;
    std::vector<std::pair<int32_t, Monomial>> basis;
    std::vector<std::pair<int32_t, Monomial>> target_basis;
    std::vector<SparseVec> matrix;  // column j: coordinates of D(basis_j)
};

DerivationSlice derivation_slice(const BigradedModel& m, int p, int q);

struct ObstructionClass {
    enum class Status { Zero, Exact, NonExact };

    int stage;
    Status status;
    Derivation representative;          // d_stage
    std::optional<Derivation> witness;  // mu in Der_{stage-1}^0 with [d, mu] = d_stage

    ObstructionClass(int stage_, Status status_, Derivation rep)
        : stage(stage_), status(status_), representative(std::move(rep)) {}
};

// Obstruction o_stage of a perturbed differential. Requires d_j = 0 for
// 2 <= j < stage (rejected otherwise); checks closedness of d_stage, then
// solves [d, mu] = d_stage. Exact witnesses are re-verified by evaluation.
ObstructionClass obstruction_at(const Derivation& d, const std::map<int32_t, Polynomial>& D_values,
                                int stage, const std::set<int32_t>& skip = {});
ObstructionClass obstruction(const FilteredModel& f, int stage);

struct GaugeStep {
    int stage;
    Derivation witness;
};

struct FormalityVerdict {
    bool formal = false;
    int cap = 0;
    int stage = 0;  // first non-vanishing obstruction when !formal
    std::optional<ObstructionClass> obstruction;
    std::vector<GaugeStep> transcript;
};

// Builds presentation -> bigraded model -> filtered model, then runs the
// obstruction loop: the first non-exact d_i is conclusive (NonFormal); when
// every stage gauges away the verdict is FormalUpTo(cap).
FormalityVerdict decide_formality(const CDGA& c, int cap);

// The raw loop on a (bigraded d, perturbed D) pair, gauging by conjugation
// only (no quasi-isomorphism transport). Used by the certificate.
FormalityVerdict obstruction_loop(const Derivation& d, std::map<int32_t, Polynomial> D_values,
                                  int cap, const std::set<int32_t>& skip = {});

struct NegativeDerivationReport {
    // basis of degree-q derivations, each recorded by its values on every
    // basis class: (degree, index) -> coordinates in degree + q
    struct DerivationOnH {
        std::map<std::pair<int, int>, SparseVec> values;
    };
    std::map<int, std::vector<DerivationOnH>> basis_by_degree;  // key q < 0
    bool halperin = true;  // no nonzero negative-degree derivations
    int scanned_down_to = 0;
};

NegativeDerivationReport negative_derivations(const FiniteGradedAlgebra& H, int cap);

struct TnczReport {
    bool tncz = false;
    std::optional<int> failing_degree;
    std::map<int, std::pair<int, int>> dims;  // degree -> (dim H(total), dim H(fiber))
};

// H(total) -> H(fiber) surjectivity up to cap; when surjective the fiber CDGA
// is a filtered model of the fiber.
TnczReport tncz_analyze(const RelativeModel& r, int cap);

struct MapFormalityReport {
    bool certified = false;
    std::string reason;
    std::vector<GaugeStep> transcript;
};

// Sufficient certificate for map formality: after gauge normalization the
// relative filtered differential D' must coincide with the relative bigraded
// d'. Requires established base and total formality verdicts.
MapFormalityReport map_formality_certificate(const RelativeModel& r,
                                             const FormalityVerdict& base_verdict,
                                             const FormalityVerdict& total_verdict);

struct ReplayReport {
    int stage = 0;
    bool restriction_matches = false;  // j'(d_i') == j(d_i) on base generators
    bool base_stage_zero = false;
    bool total_stage_zero = false;
    bool upstairs_exact = false;    // j(d_i) exact in Der(Z, Z ⊗ X)
    bool downstairs_exact = false;  // d_i exact in Der(Z, Z)
    bool transfer_consistent = false;
    std::string detail;
};

// Replays the module-derivation comparison: materializes
// Der_stage^1(Z, Z ⊗ X), checks j'(d_stage') = j(d_stage), and verifies that
// exactness upstairs is matched downstairs. Requires a TNCZ model whose fiber
// passes the Halperin check.
ReplayReport module_derivation_replay(const RelativeModel& r, int stage, int cap);

}  // namespace sullivan
