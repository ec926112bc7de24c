#include "sullivan/dsl.hpp"

#include <cctype>
#include <sstream>

namespace sullivan {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return eof() ? '\0' : s[pos]; }
    char get() {
        char c = s[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_space_in_line() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

bool ident_start(char c) { return std::isalpha(uint8_t(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(uint8_t(c)) != 0 || c == '_'; }

std::string read_ident(Cursor& c) {
    c.skip_space_in_line();
    if (!ident_start(c.peek())) c.fail("expected an identifier");
    std::string out;
    while (!c.eof() && ident_char(c.peek())) out += c.get();
    return out;
}

long read_int(Cursor& c) {
    c.skip_space_in_line();
    std::string digits;
    if (!std::isdigit(uint8_t(c.peek()))) c.fail("expected an integer");
    while (!c.eof() && std::isdigit(uint8_t(c.peek()))) digits += c.get();
    return std::stol(digits);
}

void expect(Cursor& c, char ch) {
    c.skip_space_in_line();
    if (c.peek() != ch) c.fail(std::string("expected '") + ch + "'");
    c.get();
}

void end_of_line(Cursor& c) {
    c.skip_space_in_line();
    if (c.peek() == '#') {
        while (!c.eof() && c.peek() != '\n') c.get();
    }
    if (!c.eof() && c.peek() != '\n') c.fail("unexpected trailing input");
    if (!c.eof()) c.get();
}

std::pair<std::string, int> read_factor(Cursor& c) {
    std::string name = read_ident(c);
    int power = 1;
    c.skip_space_in_line();
    if (c.peek() == '^') {
        c.get();
        long p = read_int(c);
        if (p < 1) c.fail("exponents must be positive");
        power = int(p);
    }
    return {name, power};
}

Expr read_expr(Cursor& c) {
    Expr out;
    c.skip_space_in_line();
    // literal zero
    if (c.peek() == '0') {
        c.get();
        c.skip_space_in_line();
        if (c.eof() || c.peek() == '\n' || c.peek() == '#') return out;
        c.fail("unexpected input after '0'");
    }
    bool neg = false;
    if (c.peek() == '-') {
        c.get();
        neg = true;
    } else if (c.peek() == '+') {
        c.get();
    }
    while (true) {
        c.skip_space_in_line();
        ExprTerm term;
        term.coeff = Rational(neg ? -1 : 1);
        bool saw_factor = false;
        if (std::isdigit(uint8_t(c.peek()))) {
            long num = read_int(c);
            c.skip_space_in_line();
            if (c.peek() == '/') {
                c.get();
                long den = read_int(c);
                if (den == 0) c.fail("zero denominator");
                term.coeff *= Rational(num, (unsigned long)den);
            } else {
                term.coeff *= Rational(num);
            }
            saw_factor = true;
            c.skip_space_in_line();
            if (c.peek() == '*') c.get();
        }
        while (true) {
            c.skip_space_in_line();
            if (!ident_start(c.peek())) break;
            term.powers.push_back(read_factor(c));
            saw_factor = true;
            c.skip_space_in_line();
            if (c.peek() == '*') {
                c.get();
                continue;
            }
            break;
        }
        if (!saw_factor) c.fail("expected a term");
        if (!term.coeff.is_zero()) out.push_back(std::move(term));
        c.skip_space_in_line();
        if (c.peek() == '+') {
            c.get();
            neg = false;
        } else if (c.peek() == '-') {
            c.get();
            neg = true;
        } else {
            break;
        }
    }
    return out;
}

}  // namespace

AlgebraDocument parse_document(const std::string& text) {
    Cursor c{text};
    AlgebraDocument doc;
    bool have_header = false;
    enum class Section { Top, Fibration, Morphism } section = Section::Top;

    while (!c.eof()) {
        c.skip_space_in_line();
        if (c.eof()) break;
        if (c.peek() == '\n') {
            c.get();
            continue;
        }
        if (c.peek() == '#') {
            while (!c.eof() && c.peek() != '\n') c.get();
            continue;
        }
        std::string kw = read_ident(c);
        if (kw == "algebra") {
            if (have_header) c.fail("duplicate 'algebra' header");
            doc.name = read_ident(c);
            c.skip_space_in_line();
            if (ident_start(c.peek())) {
                std::string flag = read_ident(c);
                if (flag != "bigraded") c.fail("unknown algebra flag '" + flag + "'");
                doc.bigraded_data = true;
            }
            end_of_line(c);
            have_header = true;
            continue;
        }
        if (!have_header) c.fail("document must start with 'algebra <name>'");
        if (kw == "generator") {
            section = Section::Top;
            GeneratorDecl g;
            g.name = read_ident(c);
            expect(c, ':');
            std::string dkw = read_ident(c);
            if (dkw != "degree") c.fail("expected 'degree'");
            g.degree = int(read_int(c));
            c.skip_space_in_line();
            if (ident_start(c.peek())) {
                std::string lkw = read_ident(c);
                if (lkw != "lower") c.fail("expected 'lower'");
                g.lower = int(read_int(c));
                g.has_lower = true;
            }
            end_of_line(c);
            doc.generators.push_back(std::move(g));
            continue;
        }
        if (kw == "d" && section == Section::Top) {
            std::string gen = read_ident(c);
            expect(c, '=');
            Expr e = read_expr(c);
            end_of_line(c);
            doc.differential.emplace_back(std::move(gen), std::move(e));
            continue;
        }
        if (kw == "fibration") {
            if (doc.fibration) c.fail("duplicate fibration stanza");
            end_of_line(c);
            doc.fibration = FibrationDecl{};
            section = Section::Fibration;
            continue;
        }
        if (kw == "morphism") {
            MorphismDecl m;
            m.name = read_ident(c);
            std::string to = read_ident(c);
            if (to != "to") c.fail("expected 'to'");
            m.target = read_ident(c);
            end_of_line(c);
            doc.morphisms.push_back(std::move(m));
            section = Section::Morphism;
            continue;
        }
        if (section == Section::Fibration) {
            FibrationDecl& f = *doc.fibration;
            if (kw == "base") {
                f.base = read_ident(c);
                end_of_line(c);
                continue;
            }
            if (kw == "fiber") {
                f.fiber = read_ident(c);
                end_of_line(c);
                continue;
            }
            if (kw == "theta" || kw == "twist") {
                std::string gen = read_ident(c);
                expect(c, '=');
                Expr e = read_expr(c);
                end_of_line(c);
                auto& list = kw == "theta" ? f.theta : f.twist;
                list.emplace_back(std::move(gen), std::move(e));
                continue;
            }
            c.fail("unknown keyword '" + kw + "' in fibration stanza");
        }
        if (section == Section::Morphism) {
            if (kw == "map") {
                std::string gen = read_ident(c);
                expect(c, '=');
                Expr e = read_expr(c);
                end_of_line(c);
                doc.morphisms.back().values.emplace_back(std::move(gen), std::move(e));
                continue;
            }
            c.fail("unknown keyword '" + kw + "' in morphism stanza");
        }
        c.fail("unknown keyword '" + kw + "'");
    }
    if (!have_header) throw ParseError("empty document", 1, 1);
    return doc;
}

namespace {

std::string print_expr(const Expr& e) {
    if (e.empty()) return "0";
    std::string out;
    bool first = true;
    for (const ExprTerm& t : e) {
        Rational c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c.sign() < 0 ? " - " : " + ";
            if (c.sign() < 0) c = -c;
        }
        std::string factors;
        for (auto& [name, p] : t.powers) {
            if (!factors.empty()) factors += "*";
            factors += name;
            if (p > 1) factors += "^" + std::to_string(p);
        }
        if (factors.empty()) {
            out += c.str();
        } else if (c.is_one()) {
            out += factors;
        } else {
            out += c.str() + "*" + factors;
        }
        first = false;
    }
    return out;
}

}  // namespace

std::string print_document(const AlgebraDocument& doc) {
    std::ostringstream out;
    out << "algebra " << doc.name;
    if (doc.bigraded_data) out << " bigraded";
    out << "\n";
    for (const GeneratorDecl& g : doc.generators) {
        out << "generator " << g.name << ": degree " << g.degree;
        if (g.has_lower) out << " lower " << g.lower;
        out << "\n";
    }
    for (auto& [gen, e] : doc.differential) out << "d " << gen << " = " << print_expr(e) << "\n";
    if (doc.fibration) {
        out << "fibration\n";
        out << "  base " << doc.fibration->base << "\n";
        out << "  fiber " << doc.fibration->fiber << "\n";
        for (auto& [gen, e] : doc.fibration->theta)
            out << "  theta " << gen << " = " << print_expr(e) << "\n";
        for (auto& [gen, e] : doc.fibration->twist)
            out << "  twist " << gen << " = " << print_expr(e) << "\n";
    }
    for (const MorphismDecl& m : doc.morphisms) {
        out << "morphism " << m.name << " to " << m.target << "\n";
        for (auto& [gen, e] : m.values) out << "  map " << gen << " = " << print_expr(e) << "\n";
    }
    return out.str();
}

Polynomial realize_expr(const FreeCGA& alg, const Expr& e, std::vector<std::string>* warnings,
                        const std::string& context) {
    PolyBuilder acc(alg);
    for (const ExprTerm& t : e) {
        Monomial m;  // built left to right with Koszul reordering
        int sign = 1;
        bool zero = false;
        for (auto& [name, p] : t.powers) {
            auto g = alg.find(name);
            if (!g) throw Error("unknown generator '" + name + "' in " + context);
            if (alg.gen(*g).odd() && p > 1) {
                zero = true;
                if (warnings)
                    warnings->push_back("odd generator '" + name + "' squared in " + context +
                                        "; term is zero");
                break;
            }
            Monomial factor;
            factor.factors.emplace_back(*g, p);
            auto r = monomial_product(alg, m, factor);
            if (!r) {
                zero = true;
                if (warnings)
                    warnings->push_back("odd square collapses a term to zero in " + context);
                break;
            }
            sign *= r->first;
            m = std::move(r->second);
        }
        if (zero) continue;
        acc.add(m, t.coeff * Rational(sign));
    }
    return acc.build();
}

RealizedDocument realize(const AlgebraDocument& doc, int work_cap) {
    if (doc.fibration) throw Error("fibration documents are realized with realize_fibration");
    auto alg = std::make_shared<FreeCGA>(work_cap);
    for (const GeneratorDecl& g : doc.generators) {
        if (g.degree < 2)
            throw Error("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                        "; degrees must be at least 2");
        alg->add_generator(g.name, g.degree, g.lower);
    }
    RealizedDocument out{alg, CDGA(doc.name, alg, Derivation(alg, alg, 1, std::nullopt)), {}};
    for (auto& [gen, e] : doc.differential) {
        auto g = alg->find(gen);
        if (!g) throw Error("differential on undeclared generator '" + gen + "'");
        Polynomial v = realize_expr(*alg, e, &out.warnings, "d " + gen);
        if (v.is_zero()) continue;
        auto deg = homogeneous_degree(*alg, v);
        if (!deg || *deg != alg->gen(*g).degree + 1)
            throw Error("degree mismatch: d " + gen + " must be homogeneous of degree " +
                        std::to_string(alg->gen(*g).degree + 1));
        if (doc.bigraded_data) {
            auto low = homogeneous_lower(*alg, v);
            if (!low || *low != alg->gen(*g).lower - 1)
                throw Error("bigraded data: d " + gen + " must be homogeneous of lower degree " +
                            std::to_string(alg->gen(*g).lower - 1));
        }
        out.cdga.d.set_value(*g, std::move(v));
    }
    auto viol = check_differential(out.cdga);
    if (viol)
        throw Error("d^2 != 0 at generator '" + alg->gen(viol->gen).name + "' (residue " +
                    to_string(*alg, viol->residue) + ")");
    return out;
}

CdgaMorphism realize_morphism(const MorphismDecl& decl, const RealizedDocument& src,
                              const RealizedDocument& dst) {
    AlgebraMap map(src.algebra, dst.algebra);
    std::vector<std::string> warnings;
    for (auto& [gen, e] : decl.values) {
        auto g = src.algebra->find(gen);
        if (!g) throw Error("morphism '" + decl.name + "' maps undeclared generator '" + gen + "'");
        map.set_value(*g, realize_expr(*dst.algebra, e, &warnings, "map " + gen));
    }
    for (int32_t g = 0; g < src.algebra->size(); ++g) {
        if (!map.defined(g))
            throw Error("morphism '" + decl.name + "' is missing a value on '" +
                        src.algebra->gen(g).name + "'");
    }
    CdgaMorphism phi(decl.name, std::move(map));
    auto bad = check_chain_map(phi, src.cdga, dst.cdga);
    if (bad)
        throw Error("morphism '" + decl.name + "' fails the chain condition at '" +
                    src.algebra->gen(*bad).name + "'");
    return phi;
}

BigradedModel document_bigraded_model(const AlgebraDocument& doc, int cap) {
    // a fresh realization: the model algebra must stay distinct from any CDGA
    // the caller realizes for the same document
    RealizedDocument rd = realize(doc, cap + 1);
    if (doc.bigraded_data) {
        // trusted lower-graded data: extend it instead of rebuilding, so the
        // document's generator names survive into the model
        Derivation d_lower(rd.algebra, rd.algebra, 1, 1);
        for (int32_t g = 0; g < rd.algebra->size(); ++g) {
            const Polynomial& v = rd.cdga.d.value(g);
            if (!v.is_zero()) d_lower.set_value(g, v);
        }
        FiniteGradedAlgebra H = resolved_algebra(*rd.algebra, d_lower, cap + 1);
        BigradedSeed seed;
        seed.algebra = rd.algebra;
        for (int32_t g = 0; g < rd.algebra->size(); ++g) {
            const Polynomial& v = rd.cdga.d.value(g);
            if (!v.is_zero()) seed.d_values[g] = v;
            if (rd.algebra->gen(g).lower == 0)
                seed.rho[g] = resolved_coordinates(*rd.algebra, d_lower, H,
                                                   Polynomial::generator(*rd.algebra, g),
                                                   rd.algebra->gen(g).degree);
        }
        return bigraded_model_seeded(H, cap, seed);
    }
    FiniteGradedAlgebra H = presentation(rd.cdga, cap + 1);
    return bigraded_model(H, cap);
}

RelativeModel realize_fibration(const AlgebraDocument& doc, int cap, const DocResolver& resolve) {
    if (!doc.fibration) throw Error("document has no fibration stanza");
    const FibrationDecl& f = *doc.fibration;
    if (f.base.empty() || f.fiber.empty())
        throw Error("fibration stanza needs both a base and a fiber document");

    AlgebraDocument base_doc = resolve(f.base);
    AlgebraDocument fiber_doc = resolve(f.fiber);
    RealizedDocument base = realize(base_doc, cap + 1);
    BigradedModel base_bg = document_bigraded_model(base_doc, cap);
    FilteredModel base_fm = filtered_model(base.cdga, base_bg);

    BigradedModel fiber = document_bigraded_model(fiber_doc, cap);
    AlgebraPtr total = make_total_algebra(base_fm, fiber);

    std::vector<std::string> warnings;
    std::map<int32_t, Polynomial> theta, twist;
    for (auto& [gen, e] : f.theta) {
        auto g = fiber.algebra->find(gen);
        if (!g) throw Error("theta on unknown fiber generator '" + gen + "'");
        Polynomial v = realize_expr(*fiber.algebra, e, &warnings, "theta " + gen);
        if (!v.is_zero()) theta[*g] = std::move(v);
    }
    for (auto& [gen, e] : f.twist) {
        auto g = fiber.algebra->find(gen);
        if (!g) throw Error("twist on unknown fiber generator '" + gen + "'");
        Polynomial v = realize_expr(*total, e, &warnings, "twist " + gen);
        if (!v.is_zero()) twist[*g] = std::move(v);
    }
    return assemble_fibration(base_fm, fiber, total, theta, twist);
}

}  // namespace sullivan
