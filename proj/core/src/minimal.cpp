#include "sullivan/minimal.hpp"

namespace sullivan {

MinimalModel minimal_model(const CDGA& c, int cap) {
    if (c.algebra->degree_cap() < cap + 1)
        throw Error("minimal model: the input algebra needs one slack degree past the cap");
    auto alg = std::make_shared<FreeCGA>(cap + 1);
    Derivation d(alg, alg, 1, std::nullopt);
    AlgebraMap m(alg, c.algebra);
    CohomologyCalculator target(c);

    auto fresh = [&](int n, int k) {
        std::string base = "w" + std::to_string(n) + "_" + std::to_string(k);
        int suffix = 1;
        while (alg->find(base)) base += "_m" + std::to_string(suffix++);
        return base;
    };

    for (int n = 2; n < cap; ++n) {
        int k = 0;
        // surjectivity: close the cokernel of H^n(m)
        {
            CDGA model("model", alg, d);
            CohomologyCalculator cm(model);
            Echelon image;
            int32_t cid = 0;
            for (const Polynomial& rep : cm.representatives(n)) {
                Polynomial img = m.apply(rep);
                image.insert(img.is_zero() ? SparseVec{} : target.coordinates(img, n), cid++);
            }
            for (int i = 0; i < target.dim(n); ++i) {
                if (image.insert({{int32_t(i), Rational(1)}}, cid++)) {
                    int32_t g = alg->add_generator(fresh(n, k++), n, 0);
                    m.set_value(g, target.representatives(n)[size_t(i)]);
                }
            }
        }
        // injectivity one degree up: kill ker(H^{n+1}(m)) with generators of degree n
        if (n <= cap - 2) {
            CDGA model("model", alg, d);
            CohomologyCalculator cm(model);
            int dim = cm.dim(n + 1);
            Echelon ech(true);
            std::vector<SparseVec> kernel;
            for (int32_t j = 0; j < dim; ++j) {
                Polynomial img = m.apply(cm.representatives(n + 1)[size_t(j)]);
                SparseVec coords = img.is_zero() ? SparseVec{} : target.coordinates(img, n + 1);
                SparseVec kv;
                if (!ech.insert(std::move(coords), j, &kv)) kernel.push_back(std::move(kv));
            }
            for (auto& kv : kernel) {
                Polynomial dw;
                for (auto& [j, coef] : kv)
                    dw = dw + cm.representatives(n + 1)[size_t(j)].scaled(coef);
                Polynomial img = m.apply(dw);
                std::optional<Polynomial> prim =
                    img.is_zero() ? std::optional<Polynomial>(Polynomial{}) : target.primitive(img, n + 1);
                if (!prim) throw InternalError("minimal model: kernel class not exact in the input");
                int32_t g = alg->add_generator(fresh(n, k++), n, 0);
                d.set_value(g, std::move(dw));
                m.set_value(g, std::move(*prim));
            }
        }
    }
    return {CDGA(c.name + ".minimal", alg, d), std::move(m)};
}

std::optional<int> minimal_model_failure(const MinimalModel& m, const CDGA& c, int cap) {
    CohomologyCalculator cm(m.model), ca(c);
    CdgaMorphism phi("m", m.quasi_iso);
    auto bad = check_chain_map(phi, m.model, c);
    if (bad) return m.model.algebra->gen(*bad).degree;
    CohomologyMorphism ind = induced_map(phi, cm, ca, cap);
    for (int n = 2; n < cap; ++n) {
        int dm = cm.dim(n), da = ca.dim(n);
        if (dm != da) return n;
        if (dm == 0) continue;
        if (int(rref(ind.matrices.at(n)).pivot_columns.size()) != dm) return n;
    }
    return std::nullopt;
}

}  // namespace sullivan
