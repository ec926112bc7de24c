#pragma once

#include <map>
#include <tuple>

#include "sullivan/cdga.hpp"
#include "sullivan/matrix.hpp"
#include "sullivan/sparse.hpp"

namespace sullivan {

// A cohomology algebra truncated at a degree cap: degreewise bases (degrees
// 1..cap-1; degree 0 is the unit), structure constants for in-range products,
// chosen cocycle representatives, and the indecomposable complement per degree.
struct FiniteGradedAlgebra {
    int cap = 0;
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<Polynomial>> representatives;
    // (d1, i1, d2, i2) -> coordinates of the product in degree d1+d2; keys with
    // d1 <= d2 only (graded commutativity supplies the rest).
    std::map<std::tuple<int, int, int, int>, SparseVec> products;
    std::map<int, std::vector<int>> indecomposables;

    int dim(int n) const;
    // Largest degree < cap with dim > 0 (0 when the algebra is trivial).
    int top_degree() const;
    // Bilinear product of coordinate vectors; requires d1 + d2 < cap.
    SparseVec product(int d1, const SparseVec& a, int d2, const SparseVec& b) const;
};

// Degreewise cohomology of a CDGA, with deterministic representatives and
// exact coordinates. Degrees up to cap-1 are computable (the kernel at n needs
// d into degree n+1).
class CohomologyCalculator {
public:
    explicit CohomologyCalculator(CDGA c);

    const CDGA& cdga() const { return c_; }

    int dim(int n);
    // Representatives of the chosen basis classes (closed, deterministic).
    const std::vector<Polynomial>& representatives(int n);
    // Basis of closed polynomials in degree n.
    std::vector<Polynomial> cocycle_basis(int n);
    // Coordinates of a closed polynomial over the degree-n class basis.
    SparseVec coordinates(const Polynomial& z, int n);
    // Solves d x = z; nullopt when z is not exact. Rejects non-closed input.
    std::optional<Polynomial> primitive(const Polynomial& z, int n);

    FiniteGradedAlgebra presentation(int cap);

    // Tracked image echelon of d into degree n (for primitive solves); built
    // once per degree and shared by every caller.
    const Echelon& image_echelon(int n);

private:
    struct DegreeData {
        std::vector<SparseVec> kernel;       // over degree-basis coordinates
        std::vector<SparseVec> class_reps;   // independent kernel vectors
        Echelon coords{true};                // image columns + class columns
    };
    // rank of d on the full degree-n basis (cheap, untracked)
    int rank(int n);
    DegreeData& data(int n);

    CDGA c_;
    std::map<int, int> rank_cache_;
    std::map<int, DegreeData> cache_;
    std::map<int, Echelon> image_cache_;
    std::map<int, std::vector<Polynomial>> reps_cache_;
};

// Basis of ker(d) in degree n (free-function form of the operation).
std::vector<Polynomial> cocycles(const CDGA& c, int n);

// Returns a primitive x with d x = z, or nullopt (NotExact). z must be closed.
std::optional<Polynomial> is_exact(const CDGA& c, const Polynomial& z);

FiniteGradedAlgebra presentation(const CDGA& c, int cap);

// Induced map on cohomology: per-degree matrices over the chosen bases.
struct CohomologyMorphism {
    int cap = 0;
    // matrices[n]: dim_target(n) x dim_source(n)
    std::map<int, ScalarMatrix> matrices;
};

// pre: phi commutes with the differentials (checked; throws on violation).
CohomologyMorphism induced_map(const CdgaMorphism& phi, const CDGA& src, const CDGA& dst, int cap);
CohomologyMorphism induced_map(const CdgaMorphism& phi, CohomologyCalculator& src,
                               CohomologyCalculator& dst, int cap);

// nullopt when surjective in every degree < cap, else the first failing degree.
std::optional<int> surjective_up_to(const CohomologyMorphism& m, CohomologyCalculator& target,
                                    int cap);

}  // namespace sullivan
