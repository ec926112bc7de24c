#include <random>

#include "doctest.h"
#include "support/fixtures_inline.hpp"
#include "sullivan/formality.hpp"

using namespace sullivan;
using testsupport::gp;

TEST_CASE("zero differential is formal at any cap") {
    auto f = testsupport::free_cdga(10, {{"a", 2}, {"x", 3}, {"y", 5}});
    FormalityVerdict v = decide_formality(f.cdga, 9);
    CHECK(v.formal);
    CHECK(v.cap == 9);
    CHECK(v.transcript.empty());
}

TEST_CASE("shifted heisenberg is non-formal at stage 2") {
    auto h = testsupport::heisenberg(14);
    FormalityVerdict v = decide_formality(h.cdga, 13);
    CHECK(!v.formal);
    CHECK(v.stage == 2);
    REQUIRE(v.obstruction);
    CHECK(v.obstruction->status == ObstructionClass::Status::NonExact);
}

TEST_CASE("example 3.1 is formal") {
    auto e = testsupport::example31(16);
    FormalityVerdict v = decide_formality(e.cdga, 15);
    CHECK(v.formal);
}

TEST_CASE("base_bcn carries a nonzero Massey product and is non-formal") {
    // The deformation d_2 sends the n'b'-syzygy killer to the degree-9 class
    // [b n]; no mu in Der_1^0 can reach it, so o_2 != 0.
    auto b = testsupport::base_bcn(14);
    FormalityVerdict v = decide_formality(b.cdga, 13);
    CHECK(!v.formal);
    CHECK(v.stage == 2);
}

TEST_CASE("base_bcn_total is formal") {
    auto t = testsupport::base_bcn_total(14);
    FormalityVerdict v = decide_formality(t.cdga, 13);
    CHECK(v.formal);
}

TEST_CASE("verdicts are invariant under generator permutations") {
    // example31 with generators declared in shuffled orders
    std::mt19937_64 rng(5);
    std::vector<std::pair<const char*, int>> gens = {{"a", 3}, {"b", 3}, {"c", 3},
                                                     {"d", 3}, {"u", 6}, {"v", 11}};
    for (int trial = 0; trial < 4; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        auto alg = std::make_shared<FreeCGA>(14);
        for (auto& [name, deg] : gens) alg->add_generator(name, deg);
        Derivation d(alg, alg, 1, std::nullopt);
        auto g = [&](const char* n) { return gp(*alg, *alg->find(n)); };
        Polynomial dv = multiply(*alg, multiply(*alg, g("a"), g("b")),
                                 multiply(*alg, g("c"), g("d"))) +
                        multiply(*alg, g("u"), g("u"));
        d.set_value(*alg->find("v"), dv);
        CDGA c("example31_perm", alg, std::move(d));
        CHECK(decide_formality(c, 13).formal);
    }
    // heisenberg with both declaration orders stays non-formal at stage 2
    for (bool swap : {false, true}) {
        auto alg = std::make_shared<FreeCGA>(12);
        if (swap) {
            alg->add_generator("z", 5);
            alg->add_generator("y", 3);
            alg->add_generator("x", 3);
        } else {
            alg->add_generator("x", 3);
            alg->add_generator("y", 3);
            alg->add_generator("z", 5);
        }
        Derivation d(alg, alg, 1, std::nullopt);
        auto g = [&](const char* n) { return gp(*alg, *alg->find(n)); };
        d.set_value(*alg->find("z"), multiply(*alg, g("x"), g("y")));
        CDGA c("heis_perm", alg, std::move(d));
        FormalityVerdict v = decide_formality(c, 11);
        CHECK(!v.formal);
        CHECK(v.stage == 2);
    }
}

TEST_CASE("gauge kills an artificial exact deformation") {
    FiniteGradedAlgebra H = testsupport::wedge_s2x3_H(9);
    BigradedModel m = bigraded_model(H, 8);
    const AlgebraPtr& alg = m.algebra;
    // mu(w0) = a^2 for one (4,2) generator; conjugating d gives a perturbed
    // differential whose stages are exact by construction
    int32_t w0 = -1;
    for (int32_t g = 0; g < alg->size(); ++g)
        if (alg->gen(g).lower == 2 && alg->gen(g).degree == 4) {
            w0 = g;
            break;
        }
    REQUIRE(w0 >= 0);
    Derivation mu(alg, alg, 0, 2);
    mu.set_value(w0, multiply(*alg, gp(*alg, 0), gp(*alg, 0)));
    std::map<int32_t, Polynomial> d_values;
    for (int32_t g = 0; g < alg->size(); ++g) d_values[g] = m.d.value(g);
    std::map<int32_t, Polynomial> D_values = gauge_conjugate(m.d, d_values, mu);
    auto stages = deformation_stages(m.d, D_values);
    bool nonzero = false;
    for (auto& [i, di] : stages) nonzero = nonzero || !di.is_zero();
    CHECK(nonzero);
    FormalityVerdict v = obstruction_loop(m.d, D_values, 8);
    CHECK(v.formal);
    CHECK(!v.transcript.empty());
}

TEST_CASE("obstruction witness verification and D^2 preservation under gauge") {
    auto h = testsupport::heisenberg(12);
    FiniteGradedAlgebra H = presentation(h.cdga, 12);
    BigradedModel bg = bigraded_model(H, 11);
    FilteredModel fm = filtered_model(h.cdga, bg);
    auto stages = deformation_stages(fm);
    REQUIRE(!stages.empty());
    int first = stages.begin()->first;
    ObstructionClass oc = obstruction(fm, first);
    CHECK(first == 2);
    CHECK(oc.status == ObstructionClass::Status::NonExact);
    // independent dense check: no mu matches [d, mu] = d_2 (tiny witness space)
    // covered in the acceptance suite; here: a wrong witness is rejected
    Derivation bogus(bg.algebra, bg.algebra, 0, first - 1);
    CHECK_THROWS(gauge_normalize(fm, first, bogus));
}

TEST_CASE("derivation slices: D o D = 0 and the differential itself is closed") {
    FiniteGradedAlgebra H = testsupport::wedge_s2x3_H(8);
    BigradedModel m = bigraded_model(H, 7);
    // theta = d lies in Der_1^1 and [d, d] = 0
    DerivationSlice s11 = derivation_slice(m, 1, 1);
    CHECK(!s11.basis.empty());
    // assemble d's coordinates in the slice and check the matrix kills it
    std::map<std::pair<int32_t, Monomial*>, int> unused;
    (void)unused;
    std::map<int32_t, Rational> coords;
    {
        int32_t idx = 0;
        for (auto& [g, mono] : s11.basis) {
            for (auto& [m2, c] : m.d.value(g).terms())
                if (m2 == mono) coords[idx] = c;
            ++idx;
        }
    }
    std::map<int32_t, Rational> image;
    for (auto& [j, c] : coords) sv_axpy(image, s11.matrix[size_t(j)], c);
    CHECK(sv_from_map(image).empty());
}

TEST_CASE("D^2 = 0 on random derivation slices") {
    FiniteGradedAlgebra H = testsupport::wedge_s2x3_H(8);
    BigradedModel m = bigraded_model(H, 7);
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 20; ++trial) {
        int p = int(rng() % 3);
        int q = int(rng() % 5) - 2;
        DerivationSlice s = derivation_slice(m, p, q);
        DerivationSlice t = derivation_slice(m, p + 1, q + 1);
        if (s.basis.empty() || s.target_basis.empty()) continue;
        ++checked;
        // index t's target for composing
        std::map<std::pair<int32_t, size_t>, int32_t> pos;
        for (int32_t i = 0; i < int32_t(t.basis.size()); ++i) {
            // t.basis must equal s.target_basis elementwise
            REQUIRE(t.basis[size_t(i)] == s.target_basis[size_t(i)]);
        }
        for (size_t j = 0; j < s.basis.size(); ++j) {
            std::map<int32_t, Rational> acc;
            for (auto& [k, c] : s.matrix[j]) sv_axpy(acc, t.matrix[size_t(k)], c);
            CHECK(sv_from_map(acc).empty());
        }
    }
    CHECK(checked >= 10);
}

TEST_CASE("negative derivations: H(S^2) has none") {
    auto s2 = testsupport::s2_model(12);
    FiniteGradedAlgebra H = presentation(s2.cdga, 12);
    NegativeDerivationReport r = negative_derivations(H, 12);
    CHECK(r.halperin);
    CHECK(r.scanned_down_to == -2);
    for (auto& [q, basis] : r.basis_by_degree) CHECK(basis.empty());
}

TEST_CASE("negative derivations: example 3.1 cohomology has none") {
    auto e = testsupport::example31(20);
    FiniteGradedAlgebra H = presentation(e.cdga, 20);
    NegativeDerivationReport r = negative_derivations(H, 20);
    CHECK(r.halperin);
    CHECK(r.scanned_down_to <= -11);
}

TEST_CASE("negative derivations: a free algebra slice has them") {
    // H = Lambda(x_3) (x) Q[a_2] truncated: theta with theta(x) = a, theta(a) = 0
    // is a genuine degree -1 derivation, so the report must be nonempty.
    auto f = testsupport::free_cdga(8, {{"a", 2}, {"x", 3}});
    FiniteGradedAlgebra H = presentation(f.cdga, 8);
    NegativeDerivationReport r = negative_derivations(H, 8);
    CHECK(!r.halperin);
    bool found = false;
    for (auto& [q, basis] : r.basis_by_degree) found = found || !basis.empty();
    CHECK(found);
    // solution spaces are closed under addition/scaling by construction
    // (kernel of a linear system); check every reported derivation respects
    // a product constraint: theta(a * a) = 2 a theta(a)
    for (auto& [q, basis] : r.basis_by_degree) {
        for (auto& der : basis) {
            auto it = der.values.find({2, 0});
            if (it == der.values.end() || 2 + q < 0) continue;
            SparseVec ta = it->second;
            SparseVec lhs;
            auto it4 = der.values.find({4, 0});
            if (H.dim(4) > 0 && it4 != der.values.end()) {
                // theta(a^2): express a^2 in the basis first
                SparseVec a2 = H.product(2, {{0, Rational(1)}}, 2, {{0, Rational(1)}});
                std::map<int32_t, Rational> acc;
                for (auto& [k, c] : a2) {
                    auto itk = der.values.find({4, int(k)});
                    if (itk != der.values.end()) sv_axpy(acc, itk->second, c);
                }
                lhs = sv_from_map(acc);
            }
            SparseVec rhs = H.product(2, {{0, Rational(1)}}, 2 + q, ta);
            CHECK(lhs == sv_scale(rhs, Rational(2)));
        }
    }
}
