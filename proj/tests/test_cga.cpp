#include <random>

#include "doctest.h"
#include "support/fixtures_inline.hpp"
#include "sullivan/polynomial.hpp"

using namespace sullivan;
using testsupport::gp;

namespace {

// Brute-force Koszul sign: expand both monomials into letter sequences,
// concatenate, bubble-sort by generator index counting odd-odd swaps.
std::optional<std::pair<int, Monomial>> letter_product(const FreeCGA& alg, const Monomial& a,
                                                       const Monomial& b) {
    std::vector<int32_t> letters;
    for (auto& [g, e] : a.factors)
        for (int k = 0; k < e; ++k) letters.push_back(g);
    for (auto& [g, e] : b.factors)
        for (int k = 0; k < e; ++k) letters.push_back(g);
    int sign = 1;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t i = 0; i + 1 < letters.size(); ++i) {
            if (letters[i] > letters[i + 1]) {
                if (alg.gen(letters[i]).odd() && alg.gen(letters[i + 1]).odd()) sign = -sign;
                std::swap(letters[i], letters[i + 1]);
                moved = true;
            }
        }
    }
    Monomial out;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (alg.gen(letters[i]).odd() && i + 1 < letters.size() && letters[i] == letters[i + 1])
            return std::nullopt;  // odd square
        if (!out.factors.empty() && out.factors.back().first == letters[i])
            out.factors.back().second++;
        else
            out.factors.emplace_back(letters[i], 1);
    }
    return std::make_pair(sign, out);
}

Monomial random_monomial(const FreeCGA& alg, std::mt19937_64& rng, int max_deg) {
    Monomial m;
    for (int32_t g = 0; g < alg.size(); ++g) {
        int cur = alg.mono_degree(m);
        if (cur >= max_deg) break;
        int room = (max_deg - cur) / alg.gen(g).degree;
        if (room <= 0) continue;
        int emax = alg.gen(g).odd() ? 1 : room;
        int e = int(rng() % uint64_t(emax + 1));
        if (e > 0) m.factors.emplace_back(g, e);
    }
    return m;
}

}  // namespace

TEST_CASE("koszul signs on stated examples") {
    auto alg = std::make_shared<FreeCGA>(12);
    int x = alg->add_generator("x", 3);
    int y = alg->add_generator("y", 3);
    Polynomial xy = multiply(*alg, gp(*alg, x), gp(*alg, y));
    Polynomial yx = multiply(*alg, gp(*alg, y), gp(*alg, x));
    CHECK(yx == -xy);
    CHECK(multiply(*alg, gp(*alg, x), gp(*alg, x)).is_zero());

    auto ev = std::make_shared<FreeCGA>(12);
    int a = ev->add_generator("a", 2);
    int b = ev->add_generator("b", 2);
    Polynomial s = gp(*ev, a) + gp(*ev, b);
    Polynomial sq = multiply(*ev, s, s);
    Polynomial expect = multiply(*ev, gp(*ev, a), gp(*ev, a)) +
                        multiply(*ev, gp(*ev, a), gp(*ev, b)).scaled(Rational(2)) +
                        multiply(*ev, gp(*ev, b), gp(*ev, b));
    CHECK(sq == expect);
}

TEST_CASE("monomial bases are the stated ones") {
    {
        auto alg = std::make_shared<FreeCGA>(12);
        alg->add_generator("a", 2);
        const auto& b6 = alg->degree_basis(6);
        REQUIRE(b6.size() == 1);
        CHECK(to_string(*alg, b6[0]) == "a^3");
    }
    {
        auto alg = std::make_shared<FreeCGA>(12);
        alg->add_generator("x", 3);
        alg->add_generator("y", 3);
        const auto& b6 = alg->degree_basis(6);
        REQUIRE(b6.size() == 1);
        CHECK(to_string(*alg, b6[0]) == "x*y");
    }
    {
        auto alg = std::make_shared<FreeCGA>(12);
        alg->add_generator("a", 2);
        alg->add_generator("x", 3);
        const auto& b7 = alg->degree_basis(7);
        REQUIRE(b7.size() == 1);
        CHECK(to_string(*alg, b7[0]) == "a^2*x");
    }
    {
        auto alg = std::make_shared<FreeCGA>(6);
        alg->add_generator("a", 2);
        CHECK_THROWS_AS(alg->degree_basis(7), CapError);
    }
}

TEST_CASE("multiplication agrees with the letter-shuffle oracle") {
    auto alg = std::make_shared<FreeCGA>(24);
    alg->add_generator("a", 2);
    alg->add_generator("x", 3);
    alg->add_generator("b", 4);
    alg->add_generator("y", 5);
    alg->add_generator("z", 3);
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        Monomial m1 = random_monomial(*alg, rng, 10);
        Monomial m2 = random_monomial(*alg, rng, 10);
        auto got = monomial_product(*alg, m1, m2);
        auto want = letter_product(*alg, m1, m2);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(got->first == want->first);
            CHECK(got->second == want->second);
        }
    }
}

TEST_CASE("graded commutativity and associativity (randomized)") {
    auto alg = std::make_shared<FreeCGA>(30);
    alg->add_generator("a", 2);
    alg->add_generator("x", 3);
    alg->add_generator("y", 3);
    alg->add_generator("b", 4);
    std::mt19937_64 rng(99);
    auto random_poly = [&](int deg) {
        PolyBuilder acc(*alg);
        for (const Monomial& m : alg->degree_basis(deg))
            acc.add(m, Rational(long(rng() % 5) - 2));
        return acc.build();
    };
    for (int trial = 0; trial < 200; ++trial) {
        int dp = 2 + int(rng() % 5), dq = 2 + int(rng() % 5), dr = 2 + int(rng() % 4);
        Polynomial p = random_poly(dp), q = random_poly(dq), r = random_poly(dr);
        Polynomial pq = multiply(*alg, p, q);
        Polynomial qp = multiply(*alg, q, p);
        int sign = (dp % 2 != 0 && dq % 2 != 0) ? -1 : 1;
        CHECK(pq == qp.scaled(Rational(sign)));
        CHECK(multiply(*alg, pq, r) == multiply(*alg, p, multiply(*alg, q, r)));
    }
}

TEST_CASE("derivations: paper values") {
    // d z = x y in the shifted Heisenberg algebra
    auto h = testsupport::heisenberg(14);
    auto z = h.alg->find("z");
    Polynomial dz = h.cdga.d.value(*z);
    CHECK(to_string(*h.alg, dz) == "x*y");
    // d v = a b c d + u^2
    auto e = testsupport::example31(24);
    Polynomial dv = e.cdga.d.value(*e.alg->find("v"));
    CHECK(to_string(*e.alg, dv) == "a*b*c*d + u^2");
    CHECK(!check_differential(e.cdga));

    // theta(w a) = c a for theta(w) = c, theta(a) = 0 (even degree shift)
    auto alg = std::make_shared<FreeCGA>(12);
    int a = alg->add_generator("a", 2, 0);
    int c = alg->add_generator("c", 2, 0);
    int w = alg->add_generator("w", 4, 2);
    Derivation theta(alg, alg, -2, 2);
    theta.set_value(w, gp(*alg, c));
    Polynomial wa = multiply(*alg, gp(*alg, w), gp(*alg, a));
    CHECK(theta.apply(wa) == multiply(*alg, gp(*alg, c), gp(*alg, a)));
    (void)a;
}

TEST_CASE("leibniz rule for differentials (randomized)") {
    auto h = testsupport::heisenberg(20);
    std::mt19937_64 rng(3);
    auto random_poly = [&](int deg) {
        PolyBuilder acc(*h.alg);
        for (const Monomial& m : h.alg->degree_basis(deg))
            acc.add(m, Rational(long(rng() % 5) - 2));
        return acc.build();
    };
    for (int trial = 0; trial < 300; ++trial) {
        int dp = 3 + int(rng() % 6), dq = 3 + int(rng() % 6);
        Polynomial p = random_poly(dp), q = random_poly(dq);
        Polynomial lhs = h.cdga.d.apply(multiply(*h.alg, p, q));
        int sign = dp % 2 != 0 ? -1 : 1;
        Polynomial rhs = multiply(*h.alg, h.cdga.d.apply(p), q) +
                         multiply(*h.alg, p, h.cdga.d.apply(q)).scaled(Rational(sign));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("derivation application is linear") {
    auto e = testsupport::example31(24);
    Polynomial p = gp(*e.alg, *e.alg->find("v"));
    Polynomial q = gp(*e.alg, *e.alg->find("v")).scaled(Rational(7, 3));
    CHECK(e.cdga.d.apply(p + q) == e.cdga.d.apply(p) + e.cdga.d.apply(q));
    CHECK(e.cdga.d.apply(p.scaled(Rational(-5))) == e.cdga.d.apply(p).scaled(Rational(-5)));
}

TEST_CASE("derivation bracket") {
    auto h = testsupport::heisenberg(14);
    // [d, d] = 0 for any differential
    Derivation dd = bracket(h.cdga.d, h.cdga.d);
    CHECK(dd.is_zero());

    // [d, mu](g) = d(mu(g)) - mu(d g) for a degree-0 derivation
    auto alg = h.alg;
    Derivation mu(alg, alg, 0, std::nullopt);
    int x = *alg->find("x");
    int z = *alg->find("z");
    mu.set_value(z, multiply(*alg, gp(*alg, x), gp(*alg, x)));  // zero, odd square
    mu.set_value(z, gp(*alg, z));
    Derivation br = bracket(h.cdga.d, mu);
    for (int g = 0; g < alg->size(); ++g) {
        Polynomial direct = h.cdga.d.apply(mu.value(g)) - mu.apply(h.cdga.d.value(g));
        CHECK(br.value(g) == direct);
    }
}

TEST_CASE("check_differential finds violations") {
    auto alg = std::make_shared<FreeCGA>(10);
    int x = alg->add_generator("x", 2);
    int y = alg->add_generator("y", 3);
    Derivation d(alg, alg, 1, std::nullopt);
    d.set_value(x, gp(*alg, y));
    d.set_value(y, multiply(*alg, gp(*alg, x), gp(*alg, x)));
    CDGA c("bad", alg, std::move(d));
    auto viol = check_differential(c);
    REQUIRE(viol);
    CHECK(viol->gen == x);
    CHECK(!viol->residue.is_zero());
}

TEST_CASE("mixed-algebra operands are rejected") {
    auto a1 = std::make_shared<FreeCGA>(8);
    a1->add_generator("a", 2);
    auto a2 = std::make_shared<FreeCGA>(8);
    a2->add_generator("b", 2);
    CHECK_THROWS_AS(multiply(*a1, gp(*a1, 0), gp(*a2, 0)), AlgebraMismatch);
    CHECK_THROWS_AS(gp(*a1, 0) + gp(*a2, 0), AlgebraMismatch);
}
