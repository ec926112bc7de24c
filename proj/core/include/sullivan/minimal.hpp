#pragma once

#include "sullivan/cohomology.hpp"

namespace sullivan {

// Minimal Sullivan model: a free CDGA whose differential has no linear part,
// with a quasi-isomorphism onto the input, valid through degree cap-1.
struct MinimalModel {
    CDGA model;
    AlgebraMap quasi_iso;  // model -> input
};

MinimalModel minimal_model(const CDGA& c, int cap);

// First degree < cap where the quasi-isomorphism fails (nullopt when valid).
std::optional<int> minimal_model_failure(const MinimalModel& m, const CDGA& c, int cap);

}  // namespace sullivan
