#pragma once

#include <functional>

#include "sullivan/relative.hpp"

namespace sullivan {

// Expression AST: a sum of terms, each a rational coefficient times an
// ordered product of generator powers. Terms keep their source order; Koszul
// normalization happens at realization time.
struct ExprTerm {
    Rational coeff;
    std::vector<std::pair<std::string, int>> powers;
};
using Expr = std::vector<ExprTerm>;

struct GeneratorDecl {
    std::string name;
    int degree = 0;
    int lower = 0;
    bool has_lower = false;
};

struct MorphismDecl {
    std::string name;
    std::string target;  // referenced document (fixture name or path)
    std::vector<std::pair<std::string, Expr>> values;
};

struct FibrationDecl {
    std::string base;
    std::string fiber;
    std::vector<std::pair<std::string, Expr>> theta;  // fiber-algebra expressions
    std::vector<std::pair<std::string, Expr>> twist;  // total-algebra expressions
};

struct AlgebraDocument {
    std::string name;
    bool bigraded_data = false;  // generators carry a trusted lower grading
    std::vector<GeneratorDecl> generators;
    std::vector<std::pair<std::string, Expr>> differential;
    std::vector<MorphismDecl> morphisms;
    std::optional<FibrationDecl> fibration;

    bool operator==(const AlgebraDocument&) const = default;
};

inline bool operator==(const ExprTerm& a, const ExprTerm& b) {
    return a.coeff == b.coeff && a.powers == b.powers;
}
inline bool operator==(const GeneratorDecl& a, const GeneratorDecl& b) {
    return a.name == b.name && a.degree == b.degree && a.lower == b.lower &&
           a.has_lower == b.has_lower;
}
inline bool operator==(const MorphismDecl& a, const MorphismDecl& b) {
    return a.name == b.name && a.target == b.target && a.values == b.values;
}
inline bool operator==(const FibrationDecl& a, const FibrationDecl& b) {
    return a.base == b.base && a.fiber == b.fiber && a.theta == b.theta && a.twist == b.twist;
}

// Parses a document; throws ParseError with line/column positions.
AlgebraDocument parse_document(const std::string& text);

// Canonical printer; parse(print(doc)) is structurally the identity.
std::string print_document(const AlgebraDocument& doc);

// A realized plain document: CDGA with d^2 = 0 already validated.
struct RealizedDocument {
    AlgebraPtr algebra;
    CDGA cdga;
    std::vector<std::string> warnings;  // e.g. odd squares collapsing to zero
};

// Builds the CDGA on a working algebra of the given degree cap (callers pass
// the semantic cap plus one slack degree). Rejects undeclared generators,
// degree mismatches, inhomogeneous lower degrees, and d^2 != 0.
RealizedDocument realize(const AlgebraDocument& doc, int work_cap);

// Realizes an expression, normalizing into canonical monomial order with
// Koszul signs; odd squares collapse to zero (warned).
Polynomial realize_expr(const FreeCGA& alg, const Expr& e, std::vector<std::string>* warnings,
                        const std::string& context);

using DocResolver = std::function<AlgebraDocument(const std::string& name)>;

// Bigraded model of a document's cohomology at the given semantic cap.
// Bigraded-data documents are extended in place (their generator names
// survive); plain CDGAs go through their presentation.
BigradedModel document_bigraded_model(const AlgebraDocument& doc, int cap);

// Realizes a fibration document at the given semantic cap: builds the base's
// filtered model, the fiber's bigraded model (extending trusted bigraded data
// when the fiber document declares it), and assembles the relative model.
RelativeModel realize_fibration(const AlgebraDocument& doc, int cap, const DocResolver& resolve);

// Realizes a morphism stanza against realized source and target documents.
CdgaMorphism realize_morphism(const MorphismDecl& decl, const RealizedDocument& src,
                              const RealizedDocument& dst);

}  // namespace sullivan
