#include "sullivan/fixtures.hpp"

namespace sullivan {

namespace {

const char* kS2 = R"(# rational model of the 2-sphere, with its bigraded lower grading
algebra s2 bigraded
generator a: degree 2 lower 0
generator alpha: degree 3 lower 1
d a = 0
d alpha = a^2
)";

const char* kS3 = R"(# rational model of the 3-sphere
algebra s3 bigraded
generator v: degree 3 lower 0
d v = 0
)";

const char* kS4 = R"(# rational model of the 4-sphere, with its bigraded lower grading
algebra s4 bigraded
generator g: degree 4 lower 0
generator y: degree 7 lower 1
d g = 0
d y = g^2
)";

const char* kS6 = R"(# rational model of the 6-sphere, with its bigraded lower grading
algebra s6 bigraded
generator e: degree 6 lower 0
generator f: degree 11 lower 1
d e = 0
d f = e^2
)";

const char* kExample31 = R"(# minimal model of a rationally nontrivial S^6-bundle over (S^3)^4;
# elliptic and formal, with the single relation d v = abcd + u^2
algebra example31
generator a: degree 3
generator b: degree 3
generator c: degree 3
generator d: degree 3
generator u: degree 6
generator v: degree 11
d a = 0
d b = 0
d c = 0
d d = 0
d u = 0
d v = a*b*c*d + u^2
)";

const char* kHeisenberg = R"(# degree-shifted Heisenberg algebra: the simplest non-formal example
algebra heisenberg_shifted
generator x: degree 3
generator y: degree 3
generator z: degree 5
d x = 0
d y = 0
d z = x*y
)";

const char* kBaseBcn = R"(# Lambda(b, c, n) with d n = bc; carries the Massey product <b, b, c>
algebra base_bcn
generator b: degree 3
generator c: degree 4
generator n: degree 6
d b = 0
d c = 0
d n = b*c
)";

const char* kBaseBcnTotal = R"(# base_bcn extended by z with d z = c (rationally an S^3 fiber)
algebra base_bcn_total
generator b: degree 3
generator c: degree 4
generator n: degree 6
generator z: degree 3
d b = 0
d c = 0
d n = b*c
d z = c
)";

const char* kWedge = R"(# bigraded model data for the wedge of three 2-spheres:
# V_0 = <a, b, c>, V_1 kills the six quadratics, w starts V_2
algebra wedge_s2_s2_s2 bigraded
generator a: degree 2 lower 0
generator b: degree 2 lower 0
generator c: degree 2 lower 0
generator alpha: degree 3 lower 1
generator beta: degree 3 lower 1
generator gamma: degree 3 lower 1
generator delta: degree 3 lower 1
generator epsilon: degree 3 lower 1
generator phi: degree 3 lower 1
generator w: degree 4 lower 2
d a = 0
d b = 0
d c = 0
d alpha = a^2
d beta = a*b
d gamma = c^2
d delta = b^2
d epsilon = a*c
d phi = b*c
d w = alpha*b - a*beta
)";

const char* kLupton = R"(# total space of the wedge-fiber fibration over S^3 classified by the
# closed derivation with theta(w) = c; the total space is not formal
algebra lupton_total
fibration
  base s3
  fiber wedge_s2_s2_s2
  theta w = c
)";

const char* kToyTwistor = R"(# S^2 fiber over the 4-sphere with twist d w += -g: the total space has
# the cohomology of CP^3 (a twistor-fibration toy)
algebra toy_twistor
fibration
  base s4
  fiber s2
  twist alpha = -g
)";

const char* kProduct = R"(# untwisted product model: S^3 base, S^2 fiber
algebra product_s3_s2
fibration
  base s3
  fiber s2
)";

std::vector<Fixture> make_fixtures() {
    return {
        {"s2", "rational model of the 2-sphere", kS2},
        {"s3", "rational model of the 3-sphere", kS3},
        {"s4", "rational model of the 4-sphere", kS4},
        {"s6", "rational model of the 6-sphere", kS6},
        {"example31", "nontrivial S^6-bundle over (S^3)^4: elliptic and formal", kExample31},
        {"heisenberg_shifted", "shifted Heisenberg algebra: non-formal", kHeisenberg},
        {"base_bcn", "Lambda(b,c,n) with d n = bc: nonzero Massey product", kBaseBcn},
        {"base_bcn_total", "base_bcn with an added S^3-type fiber: formal", kBaseBcnTotal},
        {"wedge_s2_s2_s2", "bigraded model data of S^2 v S^2 v S^2", kWedge},
        {"lupton_total", "non-formal total space over S^3 with wedge fiber", kLupton},
        {"toy_twistor", "toy twistor fibration: CP^3-type total space over S^4", kToyTwistor},
        {"product_s3_s2", "untwisted product fibration S^3 x S^2", kProduct},
    };
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = make_fixtures();
    return all;
}

std::optional<std::string> fixture_text(const std::string& name) {
    std::string key = name;
    if (key.rfind("fixtures/", 0) == 0) key = key.substr(9);
    for (const Fixture& f : fixtures())
        if (f.name == key) return f.text;
    return std::nullopt;
}

AlgebraDocument fixture_document(const std::string& name) {
    auto text = fixture_text(name);
    if (!text) throw Error("unknown fixture '" + name + "'");
    return parse_document(*text);
}

DocResolver fixture_resolver() {
    return [](const std::string& name) { return fixture_document(name); };
}

}  // namespace sullivan
