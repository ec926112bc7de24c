#include "sullivan/cdga.hpp"

namespace sullivan {

std::optional<DifferentialViolation> check_differential(const CDGA& c) {
    const FreeCGA& alg = *c.algebra;
    for (int g = 0; g < alg.size(); ++g) {
        if (alg.gen(g).degree + 2 > alg.degree_cap()) continue;
        Polynomial r = c.d.apply(c.d.value(g));
        if (!r.is_zero()) return DifferentialViolation{g, std::move(r)};
    }
    return std::nullopt;
}

std::optional<int32_t> check_chain_map(const CdgaMorphism& phi, const CDGA& src, const CDGA& dst) {
    const FreeCGA& alg = *src.algebra;
    for (int g = 0; g < alg.size(); ++g) {
        if (alg.gen(g).degree + 1 > dst.algebra->degree_cap()) continue;
        Polynomial lhs = phi.map.apply(src.d.value(g));
        Polynomial rhs = dst.d.apply(phi.map.value(g));
        if (!(lhs == rhs)) return g;
    }
    return std::nullopt;
}

}  // namespace sullivan
