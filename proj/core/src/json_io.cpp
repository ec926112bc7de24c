#include "sullivan/json_io.hpp"

namespace sullivan {

json to_json(const Rational& r) { return json{{"num", r.num_str()}, {"den", r.den_str()}}; }

namespace {

Rational rational_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw SchemaError("expected a rational {num, den}", path);
    if (!j["num"].is_string()) throw SchemaError("expected a string", path + ".num");
    if (!j["den"].is_string()) throw SchemaError("expected a string", path + ".den");
    return Rational::from_parts(j["num"].get<std::string>(), j["den"].get<std::string>());
}

json expr_to_json(const Expr& e) {
    json terms = json::array();
    for (const ExprTerm& t : e) {
        json powers = json::array();
        for (auto& [name, p] : t.powers) powers.push_back(json::array({name, p}));
        terms.push_back(json{{"coeff", to_json(t.coeff)}, {"powers", powers}});
    }
    return terms;
}

Expr expr_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError("expected an array of terms", path);
    Expr out;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string tp = path + "[" + std::to_string(i) + "]";
        if (!t.is_object() || !t.contains("coeff") || !t.contains("powers"))
            throw SchemaError("expected a term {coeff, powers}", tp);
        ExprTerm term;
        term.coeff = rational_from_json(t["coeff"], tp + ".coeff");
        const json& ps = t["powers"];
        if (!ps.is_array()) throw SchemaError("expected an array", tp + ".powers");
        for (size_t k = 0; k < ps.size(); ++k) {
            const json& f = ps[k];
            std::string fp = tp + ".powers[" + std::to_string(k) + "]";
            if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer())
                throw SchemaError("expected [name, exponent]", fp);
            int e = f[1].get<int>();
            if (e < 1) throw SchemaError("exponent must be positive", fp + "[1]");
            term.powers.emplace_back(f[0].get<std::string>(), e);
        }
        out.push_back(std::move(term));
    }
    return out;
}

json poly_to_json(const FreeCGA& alg, const Polynomial& p) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json mono = json::array();
        for (auto& [g, e] : m.factors) mono.push_back(json::array({alg.gen(g).name, e}));
        terms.push_back(json{{"coeff", to_json(c)}, {"monomial", mono}});
    }
    return terms;
}

json generators_to_json(const FreeCGA& alg) {
    json out = json::array();
    for (const GeneratorSymbol& g : alg.generators())
        out.push_back(json{{"name", g.name}, {"degree", g.degree}, {"lower", g.lower}});
    return out;
}

json values_to_json(const FreeCGA& domain, const FreeCGA& codomain,
                    const std::map<int32_t, Polynomial>& values) {
    json out = json::array();
    for (auto& [g, v] : values) {
        if (v.is_zero()) continue;
        out.push_back(
            json{{"generator", domain.gen(g).name}, {"value", poly_to_json(codomain, v)}});
    }
    return out;
}

json derivation_to_json(const Derivation& d) {
    return values_to_json(d.domain(), d.codomain(), d.values());
}

json sparse_to_json(const SparseVec& v) {
    json out = json::array();
    for (auto& [i, c] : v) out.push_back(json::array({i, to_json(c)}));
    return out;
}

}  // namespace

json to_json(const FreeCGA& alg, const Polynomial& p) { return poly_to_json(alg, p); }

json to_json(const AlgebraDocument& doc) {
    json j;
    j["kind"] = "algebra_document";
    j["name"] = doc.name;
    j["bigraded"] = doc.bigraded_data;
    json gens = json::array();
    for (const GeneratorDecl& g : doc.generators) {
        json gj{{"name", g.name}, {"degree", g.degree}};
        if (g.has_lower) gj["lower"] = g.lower;
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    json diff = json::array();
    for (auto& [gen, e] : doc.differential)
        diff.push_back(json{{"generator", gen}, {"value", expr_to_json(e)}});
    j["differential"] = std::move(diff);
    if (doc.fibration) {
        json f;
        f["base"] = doc.fibration->base;
        f["fiber"] = doc.fibration->fiber;
        json th = json::array();
        for (auto& [gen, e] : doc.fibration->theta)
            th.push_back(json{{"generator", gen}, {"value", expr_to_json(e)}});
        f["theta"] = std::move(th);
        json tw = json::array();
        for (auto& [gen, e] : doc.fibration->twist)
            tw.push_back(json{{"generator", gen}, {"value", expr_to_json(e)}});
        f["twist"] = std::move(tw);
        j["fibration"] = std::move(f);
    }
    if (!doc.morphisms.empty()) {
        json ms = json::array();
        for (const MorphismDecl& m : doc.morphisms) {
            json vals = json::array();
            for (auto& [gen, e] : m.values)
                vals.push_back(json{{"generator", gen}, {"value", expr_to_json(e)}});
            ms.push_back(json{{"name", m.name}, {"target", m.target}, {"values", vals}});
        }
        j["morphisms"] = std::move(ms);
    }
    return j;
}

AlgebraDocument document_from_json(const json& j) {
    AlgebraDocument doc;
    if (!j.is_object()) throw SchemaError("expected a document object", "$");
    if (!j.contains("name") || !j["name"].is_string())
        throw SchemaError("expected a string", "$.name");
    doc.name = j["name"].get<std::string>();
    if (j.contains("bigraded")) {
        if (!j["bigraded"].is_boolean()) throw SchemaError("expected a boolean", "$.bigraded");
        doc.bigraded_data = j["bigraded"].get<bool>();
    }
    if (!j.contains("generators") || !j["generators"].is_array())
        throw SchemaError("expected an array", "$.generators");
    const json& gens = j["generators"];
    for (size_t i = 0; i < gens.size(); ++i) {
        std::string gp = "$.generators[" + std::to_string(i) + "]";
        const json& g = gens[i];
        if (!g.is_object() || !g.contains("name") || !g.contains("degree"))
            throw SchemaError("expected {name, degree[, lower]}", gp);
        if (!g["name"].is_string()) throw SchemaError("expected a string", gp + ".name");
        if (!g["degree"].is_number_integer()) throw SchemaError("expected an integer", gp + ".degree");
        GeneratorDecl decl;
        decl.name = g["name"].get<std::string>();
        decl.degree = g["degree"].get<int>();
        if (decl.degree < 2) throw SchemaError("generator degree must be at least 2", gp + ".degree");
        if (g.contains("lower")) {
            if (!g["lower"].is_number_integer())
                throw SchemaError("expected an integer", gp + ".lower");
            decl.lower = g["lower"].get<int>();
            decl.has_lower = true;
            if (decl.lower < 0) throw SchemaError("lower degree must be nonnegative", gp + ".lower");
        }
        doc.generators.push_back(std::move(decl));
    }
    if (j.contains("differential")) {
        const json& diff = j["differential"];
        if (!diff.is_array()) throw SchemaError("expected an array", "$.differential");
        for (size_t i = 0; i < diff.size(); ++i) {
            std::string dp = "$.differential[" + std::to_string(i) + "]";
            const json& it = diff[i];
            if (!it.is_object() || !it.contains("generator") || !it.contains("value"))
                throw SchemaError("expected {generator, value}", dp);
            if (!it["generator"].is_string()) throw SchemaError("expected a string", dp + ".generator");
            doc.differential.emplace_back(it["generator"].get<std::string>(),
                                          expr_from_json(it["value"], dp + ".value"));
        }
    }
    if (j.contains("fibration")) {
        const json& f = j["fibration"];
        if (!f.is_object()) throw SchemaError("expected an object", "$.fibration");
        FibrationDecl decl;
        if (!f.contains("base") || !f["base"].is_string())
            throw SchemaError("expected a string", "$.fibration.base");
        if (!f.contains("fiber") || !f["fiber"].is_string())
            throw SchemaError("expected a string", "$.fibration.fiber");
        decl.base = f["base"].get<std::string>();
        decl.fiber = f["fiber"].get<std::string>();
        for (const char* key : {"theta", "twist"}) {
            if (!f.contains(key)) continue;
            const json& list = f[key];
            std::string lp = std::string("$.fibration.") + key;
            if (!list.is_array()) throw SchemaError("expected an array", lp);
            for (size_t i = 0; i < list.size(); ++i) {
                std::string ip = lp + "[" + std::to_string(i) + "]";
                const json& it = list[i];
                if (!it.is_object() || !it.contains("generator") || !it.contains("value"))
                    throw SchemaError("expected {generator, value}", ip);
                auto& dst = std::string(key) == "theta" ? decl.theta : decl.twist;
                dst.emplace_back(it["generator"].get<std::string>(),
                                 expr_from_json(it["value"], ip + ".value"));
            }
        }
        doc.fibration = std::move(decl);
    }
    if (j.contains("morphisms")) {
        const json& ms = j["morphisms"];
        if (!ms.is_array()) throw SchemaError("expected an array", "$.morphisms");
        for (size_t i = 0; i < ms.size(); ++i) {
            std::string mp = "$.morphisms[" + std::to_string(i) + "]";
            const json& m = ms[i];
            if (!m.is_object() || !m.contains("name") || !m.contains("target"))
                throw SchemaError("expected {name, target, values}", mp);
            MorphismDecl decl;
            decl.name = m["name"].get<std::string>();
            decl.target = m["target"].get<std::string>();
            if (m.contains("values")) {
                const json& vals = m["values"];
                if (!vals.is_array()) throw SchemaError("expected an array", mp + ".values");
                for (size_t k = 0; k < vals.size(); ++k) {
                    std::string vp = mp + ".values[" + std::to_string(k) + "]";
                    const json& it = vals[k];
                    if (!it.is_object() || !it.contains("generator") || !it.contains("value"))
                        throw SchemaError("expected {generator, value}", vp);
                    decl.values.emplace_back(it["generator"].get<std::string>(),
                                             expr_from_json(it["value"], vp + ".value"));
                }
            }
            doc.morphisms.push_back(std::move(decl));
        }
    }
    return doc;
}

json to_json(const FiniteGradedAlgebra& H) {
    json j;
    j["kind"] = "graded_algebra";
    j["cap"] = H.cap;
    json degrees = json::array();
    for (auto& [n, labels] : H.labels) {
        if (labels.empty()) continue;
        json d{{"degree", n}, {"labels", labels}};
        auto ind = H.indecomposables.find(n);
        d["indecomposables"] = ind == H.indecomposables.end() ? std::vector<int>{} : ind->second;
        degrees.push_back(std::move(d));
    }
    j["basis"] = std::move(degrees);
    json prods = json::array();
    for (auto& [key, coords] : H.products) {
        auto [d1, i1, d2, i2] = key;
        prods.push_back(json{{"left", json::array({d1, i1})},
                             {"right", json::array({d2, i2})},
                             {"value", sparse_to_json(coords)}});
    }
    j["products"] = std::move(prods);
    return j;
}

json to_json(const BigradedModel& m) {
    json j;
    j["kind"] = "bigraded_model";
    j["cap"] = m.cap;
    j["generators"] = generators_to_json(*m.algebra);
    j["differential"] = derivation_to_json(m.d);
    json rho = json::array();
    for (auto& [g, coords] : m.rho) {
        rho.push_back(
            json{{"generator", m.algebra->gen(g).name}, {"class_coordinates", sparse_to_json(coords)}});
    }
    j["rho"] = std::move(rho);
    j["cohomology"] = to_json(m.H);
    return j;
}

json to_json(const FilteredModel& f) {
    json j;
    j["kind"] = "filtered_model";
    j["cap"] = f.cap;
    j["input"] = f.A.name;
    j["generators"] = generators_to_json(*f.base.algebra);
    j["bigraded_differential"] = derivation_to_json(f.base.d);
    json stages = json::array();
    for (auto& [i, di] : deformation_stages(f)) {
        stages.push_back(json{{"stage", i}, {"values", derivation_to_json(di)}});
    }
    j["deformation"] = std::move(stages);
    j["pi"] = values_to_json(*f.base.algebra, *f.A.algebra, f.pi.values());
    json boundary = json::array();
    for (int32_t g : f.boundary) boundary.push_back(f.base.algebra->gen(g).name);
    j["boundary"] = std::move(boundary);
    return j;
}

json to_json(const MinimalModel& m, const CDGA& input) {
    json j;
    j["kind"] = "minimal_model";
    j["input"] = input.name;
    j["generators"] = generators_to_json(*m.model.algebra);
    j["differential"] = derivation_to_json(m.model.d);
    j["quasi_iso"] = values_to_json(*m.model.algebra, *input.algebra, m.quasi_iso.values());
    return j;
}

json to_json(const RelativeModel& r) {
    json j;
    j["kind"] = "relative_model";
    j["cap"] = r.cap;
    j["base_generators"] = r.z_count;
    j["generators"] = generators_to_json(*r.total_algebra());
    j["bigraded_differential"] = derivation_to_json(r.d_prime());
    json stages = json::array();
    for (auto& [i, di] : deformation_stages(r.d_prime(), r.D_prime, r.boundary))
        stages.push_back(json{{"stage", i}, {"values", derivation_to_json(di)}});
    j["deformation"] = std::move(stages);
    j["fiber_generators"] = generators_to_json(*r.fiber.algebra);
    j["fiber_differential"] = derivation_to_json(r.fiber.d);
    return j;
}

json to_json(const FormalityVerdict& v, const FreeCGA* model_algebra) {
    json j;
    j["kind"] = "formality_verdict";
    j["outcome"] = v.formal ? "formal_up_to" : "non_formal";
    j["cap"] = v.cap;
    if (!v.formal) {
        j["stage"] = v.stage;
        if (v.obstruction && model_algebra) {
            json oc;
            oc["stage"] = v.obstruction->stage;
            oc["status"] = v.obstruction->status == ObstructionClass::Status::NonExact
                               ? "non_exact"
                               : (v.obstruction->status == ObstructionClass::Status::Exact ? "exact"
                                                                                           : "zero");
            oc["representative"] = derivation_to_json(v.obstruction->representative);
            j["obstruction"] = std::move(oc);
        }
    }
    json transcript = json::array();
    for (const GaugeStep& s : v.transcript) {
        transcript.push_back(json{{"stage", s.stage}, {"witness", derivation_to_json(s.witness)}});
    }
    j["transcript"] = std::move(transcript);
    return j;
}

json to_json(const NegativeDerivationReport& r, const FiniteGradedAlgebra& H) {
    json j;
    j["kind"] = "negative_derivation_report";
    j["halperin"] = r.halperin;
    j["scanned_down_to"] = r.scanned_down_to;
    json degrees = json::array();
    for (auto& [q, basis] : r.basis_by_degree) {
        json b = json::array();
        for (auto& der : basis) {
            json vals = json::array();
            for (auto& [key, coords] : der.values) {
                auto [n, i] = key;
                vals.push_back(json{{"class", json::array({n, i})},
                                    {"label", H.labels.at(n)[size_t(i)]},
                                    {"value", sparse_to_json(coords)}});
            }
            b.push_back(std::move(vals));
        }
        degrees.push_back(json{{"degree", q}, {"basis", std::move(b)}});
    }
    j["by_degree"] = std::move(degrees);
    return j;
}

json to_json(const TnczReport& r) {
    json j;
    j["kind"] = "tncz_report";
    j["tncz"] = r.tncz;
    if (r.failing_degree) j["failing_degree"] = *r.failing_degree;
    json dims = json::array();
    for (auto& [n, pr] : r.dims)
        dims.push_back(json{{"degree", n}, {"total", pr.first}, {"fiber", pr.second}});
    j["dims"] = std::move(dims);
    return j;
}

json to_json(const MapFormalityReport& r, const FreeCGA* model_algebra) {
    json j;
    j["kind"] = "map_formality_report";
    j["certified"] = r.certified;
    j["reason"] = r.reason;
    json transcript = json::array();
    for (const GaugeStep& s : r.transcript) {
        json step{{"stage", s.stage}};
        if (model_algebra) step["witness"] = derivation_to_json(s.witness);
        transcript.push_back(std::move(step));
    }
    j["transcript"] = std::move(transcript);
    return j;
}

json to_json(const ReplayReport& r) {
    json j;
    j["kind"] = "replay_report";
    j["stage"] = r.stage;
    j["restriction_matches"] = r.restriction_matches;
    j["base_stage_zero"] = r.base_stage_zero;
    j["total_stage_zero"] = r.total_stage_zero;
    j["upstairs_exact"] = r.upstairs_exact;
    j["downstairs_exact"] = r.downstairs_exact;
    j["transfer_consistent"] = r.transfer_consistent;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sullivan
