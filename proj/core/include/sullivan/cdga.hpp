#pragma once

#include <optional>
#include <string>

#include "sullivan/derivation.hpp"

namespace sullivan {

// Commutative differential graded algebra carried by a free CGA: d has degree
// shift +1 and squares to zero within the cap.
struct CDGA {
    std::string name;
    ConstAlgebraPtr algebra;
    Derivation d;

    CDGA(std::string name_, ConstAlgebraPtr alg, Derivation d_)
        : name(std::move(name_)), algebra(std::move(alg)), d(std::move(d_)) {}
};

struct DifferentialViolation {
    int32_t gen;
    Polynomial residue;  // d(d(gen)) != 0
};

// Verifies d(d(g)) = 0 for every generator whose image stays within the cap.
// Returns the first violating generator, or nullopt when well-formed.
std::optional<DifferentialViolation> check_differential(const CDGA& c);

// CDGA morphism: an algebra map commuting with the differentials.
struct CdgaMorphism {
    std::string name;
    AlgebraMap map;
    CdgaMorphism(std::string name_, AlgebraMap m) : name(std::move(name_)), map(std::move(m)) {}
};

// First generator where phi(d(g)) != d'(phi(g)) within cap, or nullopt.
std::optional<int32_t> check_chain_map(const CdgaMorphism& phi, const CDGA& src, const CDGA& dst);

}  // namespace sullivan
