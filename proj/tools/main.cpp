// sullivan: Sullivan-model computations for finite-type simply-connected
// CDGAs over Q — cohomology, bigraded/filtered/minimal/relative models,
// formality obstructions, the negative-derivation check, TNCZ analysis,
// map-formality certificates, and the module-derivation replay.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sullivan/fixtures.hpp"
#include "sullivan/json_io.hpp"

namespace fs = std::filesystem;
using namespace sullivan;

namespace {

constexpr int kExitVerdict = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

struct Options {
    std::string input;
    int cap = 0;
    bool json = false;
    uint64_t seed = 0;
    std::string expect;
    int stage = 2;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AlgebraDocument document_from_text(const std::string& text) {
    size_t i = text.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && text[i] == '{') return document_from_json(json::parse(text));
    return parse_document(text);
}

// Inputs resolve to a file on disk first, then to the embedded corpus
// (with or without a "fixtures/" prefix).
AlgebraDocument load_document(const std::string& input) {
    if (fs::exists(input) && fs::is_regular_file(input)) return document_from_text(read_file(input));
    if (auto fx = fixture_text(input)) return document_from_text(*fx);
    throw Error("no such file or fixture: '" + input + "'");
}

// Fibration base/fiber references resolve relative to the input's directory,
// then against the embedded corpus.
DocResolver make_resolver(const std::string& input) {
    fs::path dir = fs::path(input).parent_path();
    return [dir](const std::string& name) -> AlgebraDocument {
        std::vector<std::string> candidates;
        candidates.push_back(dir.empty() ? name : (dir / name).string());
        candidates.push_back(dir.empty() ? name + ".cdga" : (dir / (name + ".cdga")).string());
        for (const std::string& candidate : candidates) {
            if (fs::exists(candidate) && fs::is_regular_file(candidate))
                return document_from_text(read_file(candidate));
        }
        return fixture_document(name);
    };
}

int doc_max_degree(const AlgebraDocument& doc, const DocResolver& resolve) {
    int top = 2;
    for (const GeneratorDecl& g : doc.generators) top = std::max(top, g.degree);
    if (doc.fibration) {
        top = std::max(top, doc_max_degree(resolve(doc.fibration->base), resolve));
        top = std::max(top, doc_max_degree(resolve(doc.fibration->fiber), resolve));
    }
    return top;
}

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.json)
        std::cout << dump_canonical(j);
    else
        std::cout << text;
}

std::string describe_transcript(const std::vector<GaugeStep>& transcript) {
    if (transcript.empty()) return "gauge transcript: empty (no deformation stages appeared)\n";
    std::string out = "gauge transcript:\n";
    for (const GaugeStep& s : transcript) {
        out += "  stage " + std::to_string(s.stage) + ": exact, gauged away (witness on " +
               std::to_string(s.witness.values().size()) + " generator(s))\n";
    }
    return out;
}

int run_cohomology(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    RealizedDocument rd = realize(doc, opt.cap + 1);
    CohomologyCalculator calc(rd.cdga);
    json degrees = json::array();
    std::string text =
        "cohomology of " + doc.name + " through degree " + std::to_string(opt.cap - 1) + "\n";
    std::string betti = "betti:";
    for (int n = 0; n < opt.cap; ++n) {
        int dim = calc.dim(n);
        degrees.push_back(dim);
        betti += " " + std::to_string(dim);
        if (dim > 0 && n > 0) text += "  H^" + std::to_string(n) + "  dim " + std::to_string(dim) + "\n";
    }
    json j{{"kind", "cohomology"}, {"name", doc.name}, {"cap", opt.cap}, {"betti", degrees}};
    emit(opt, j, text + betti + "\n");
    return kExitVerdict;
}

int run_presentation(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    RealizedDocument rd = realize(doc, opt.cap + 1);
    FiniteGradedAlgebra H = presentation(rd.cdga, opt.cap + 1);
    std::string text =
        "presentation of H(" + doc.name + ") through degree " + std::to_string(opt.cap) + "\n";
    for (auto& [n, labels] : H.labels) {
        if (labels.empty()) continue;
        text += "  degree " + std::to_string(n) + ": dim " + std::to_string(labels.size()) +
                ", indecomposables " + std::to_string(H.indecomposables.at(n).size()) + "\n";
    }
    text += "  nonzero products: " + std::to_string(H.products.size()) + "\n";
    emit(opt, to_json(H), text);
    return kExitVerdict;
}

int run_minimal_model(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    RealizedDocument rd = realize(doc, opt.cap + 1);
    MinimalModel m = minimal_model(rd.cdga, opt.cap);
    std::string text = "minimal model of " + doc.name + " (cap " + std::to_string(opt.cap) + ")\n";
    for (const GeneratorSymbol& g : m.model.algebra->generators())
        text += "  " + g.name + ": degree " + std::to_string(g.degree) + "\n";
    text += "  generators: " + std::to_string(m.model.algebra->size()) + "\n";
    emit(opt, to_json(m, rd.cdga), text);
    return kExitVerdict;
}

int run_bigraded_model(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    BigradedModel m = document_bigraded_model(doc, opt.cap);
    auto profile = generator_profile(m);
    std::string text =
        "bigraded model of H(" + doc.name + ") (cap " + std::to_string(opt.cap) + ")\n";
    for (auto& [key, count] : profile) {
        text += "  degree " + std::to_string(key.first) + " lower " + std::to_string(key.second) +
                ": " + std::to_string(count) + " generator(s)\n";
    }
    emit(opt, to_json(m), text);
    return kExitVerdict;
}

int run_filtered_model(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    RealizedDocument rd = realize(doc, opt.cap + 1);
    FiniteGradedAlgebra H = presentation(rd.cdga, opt.cap + 1);
    BigradedModel bg = bigraded_model(H, opt.cap);
    FilteredModel fm = filtered_model(rd.cdga, bg);
    auto stages = deformation_stages(fm);
    std::string text = "filtered model of " + doc.name + " (cap " + std::to_string(opt.cap) +
                       ")\n  generators: " + std::to_string(bg.algebra->size()) + "\n";
    if (stages.empty()) {
        text += "  deformation: none (D = d)\n";
    } else {
        for (auto& [i, di] : stages)
            text += "  deformation stage " + std::to_string(i) + ": values on " +
                    std::to_string(di.values().size()) + " generator(s)\n";
    }
    emit(opt, to_json(fm), text);
    return kExitVerdict;
}

int run_formality(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    DocResolver resolve = make_resolver(opt.input);
    FormalityVerdict v = [&] {
        if (doc.fibration) {
            RelativeModel r = realize_fibration(doc, opt.cap, resolve);
            return decide_formality(r.total_cdga(), opt.cap);
        }
        RealizedDocument rd = realize(doc, opt.cap + 1);
        return decide_formality(rd.cdga, opt.cap);
    }();
    const FreeCGA* alg = v.obstruction ? &v.obstruction->representative.domain() : nullptr;
    std::string text;
    if (v.formal) {
        text = "FormalUpTo(" + std::to_string(v.cap) + ")\n" + describe_transcript(v.transcript);
    } else {
        text = "NonFormal(stage=" + std::to_string(v.stage) + ")\n";
        if (alg) {
            text += "obstruction representative d_" + std::to_string(v.stage) + ":\n";
            for (auto& [g, val] : v.obstruction->representative.values())
                text += "  " + alg->gen(g).name + " -> " + to_string(*alg, val) + "\n";
            text += "no witness mu solves [d, mu] = d_" + std::to_string(v.stage) +
                    " (non-exact obstruction class)\n";
        }
    }
    emit(opt, to_json(v, alg), text);
    if (opt.expect == "formal") return v.formal ? kExitVerdict : kExitUsage;
    if (opt.expect == "nonformal") return v.formal ? kExitUsage : kExitVerdict;
    return kExitVerdict;
}

int run_halperin(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    RealizedDocument rd = realize(doc, opt.cap + 1);
    FiniteGradedAlgebra H;
    if (doc.bigraded_data) {
        Derivation d_lower(rd.algebra, rd.algebra, 1, 1);
        for (int32_t g = 0; g < rd.algebra->size(); ++g)
            if (!rd.cdga.d.value(g).is_zero()) d_lower.set_value(g, rd.cdga.d.value(g));
        H = resolved_algebra(*rd.algebra, d_lower, opt.cap + 1);
    } else {
        H = presentation(rd.cdga, opt.cap + 1);
    }
    NegativeDerivationReport r = negative_derivations(H, opt.cap + 1);
    std::string text;
    if (r.halperin) {
        text = "no negative-degree derivations (degrees -1 down to " +
               std::to_string(r.scanned_down_to) + ")\n";
    } else {
        text = "negative-degree derivations exist:\n";
        for (auto& [q, basis] : r.basis_by_degree) {
            if (basis.empty()) continue;
            text += "  degree " + std::to_string(q) + ": dimension " + std::to_string(basis.size()) +
                    "\n";
        }
    }
    emit(opt, to_json(r, H), text);
    return kExitVerdict;
}

int run_tncz(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    if (!doc.fibration) throw Error("tncz needs a fibration document");
    RelativeModel r = realize_fibration(doc, opt.cap, make_resolver(opt.input));
    TnczReport rep = tncz_analyze(r, opt.cap);
    std::string text;
    if (rep.tncz) {
        text = "TNCZ: H(total) -> H(fiber) is surjective through degree " +
               std::to_string(opt.cap - 1) + "\n";
        text += "the fiber CDGA is a filtered model of the fiber\n";
    } else {
        text = "not TNCZ: surjectivity fails in degree " + std::to_string(*rep.failing_degree) + "\n";
    }
    emit(opt, to_json(rep), text);
    return kExitVerdict;
}

int run_map_formality(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    if (!doc.fibration) throw Error("map-formality needs a fibration document");
    DocResolver resolve = make_resolver(opt.input);
    RelativeModel r = realize_fibration(doc, opt.cap, resolve);
    AlgebraDocument base_doc = resolve(doc.fibration->base);
    RealizedDocument base = realize(base_doc, opt.cap + 1);
    FormalityVerdict vb = decide_formality(base.cdga, opt.cap);
    FormalityVerdict vt = decide_formality(r.total_cdga(), opt.cap);
    MapFormalityReport rep = map_formality_certificate(r, vb, vt);
    std::string text =
        (rep.certified ? std::string("Certified: the fibration map is formal (")
                       : std::string("NotCertified (")) +
        rep.reason + ")\n";
    emit(opt, to_json(rep, r.total_algebra().get()), text);
    return kExitVerdict;
}

int run_replay(const Options& opt) {
    AlgebraDocument doc = load_document(opt.input);
    if (!doc.fibration) throw Error("replay-derivations needs a fibration document");
    RelativeModel r = realize_fibration(doc, opt.cap, make_resolver(opt.input));
    ReplayReport rep = module_derivation_replay(r, opt.stage, opt.cap);
    std::string text = "module-derivation replay at stage " + std::to_string(rep.stage) + "\n";
    text += std::string("  j'(d_i') = j(d_i) on base generators: ") +
            (rep.restriction_matches ? "yes" : "NO") + "\n";
    text += std::string("  base stage: ") + (rep.base_stage_zero ? "zero" : "nonzero") +
            ", total stage: " + (rep.total_stage_zero ? "zero" : "nonzero") + "\n";
    text += std::string("  j(d_i) exact in Der(Z, Z(x)X): ") + (rep.upstairs_exact ? "yes" : "no") +
            "\n";
    text += std::string("  d_i exact in Der(Z, Z): ") + (rep.downstairs_exact ? "yes" : "no") + "\n";
    text += std::string("  exactness transfer consistent: ") +
            (rep.transfer_consistent ? "yes" : "NO") + "\n";
    emit(opt, to_json(rep), text);
    return kExitVerdict;
}

int run_fixtures(const Options& opt) {
    json list = json::array();
    std::string text = "bundled fixtures:\n";
    for (const Fixture& f : fixtures()) {
        list.push_back(json{{"name", f.name}, {"description", f.description}});
        std::string pad(f.name.size() < 20 ? 20 - f.name.size() : 1, ' ');
        text += "  " + f.name + pad + f.description + "\n";
    }
    emit(opt, json{{"kind", "fixtures"}, {"fixtures", list}}, text);
    return kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sullivan models and formality obstructions for simply-connected CDGAs over Q"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", opt.input, "document: a file path or a fixture name")->required();
        sub->add_option("--cap", opt.cap, "degree cap (results are exact through cap-1)")
            ->required();
        sub->add_flag("--json", opt.json, "canonical JSON output");
        sub->add_option("--seed", opt.seed, "seed for randomized self-verification passes");
    };

    auto* cohomology = app.add_subcommand("cohomology", "degreewise Betti numbers");
    add_common(cohomology);
    auto* pres = app.add_subcommand("presentation", "cohomology algebra presentation");
    add_common(pres);
    auto* minimal = app.add_subcommand("minimal-model", "minimal Sullivan model");
    add_common(minimal);
    auto* bigraded = app.add_subcommand("bigraded-model", "bigraded model of the cohomology");
    add_common(bigraded);
    auto* filtered = app.add_subcommand("filtered-model", "filtered (perturbed) model");
    add_common(filtered);
    auto* formality = app.add_subcommand("formality", "formality verdict via obstruction classes");
    add_common(formality);
    formality->add_option("--expect", opt.expect, "nonzero exit unless the verdict matches")
        ->check(CLI::IsMember({"formal", "nonformal"}));
    auto* halperin = app.add_subcommand("halperin", "negative-degree derivation check");
    add_common(halperin);
    auto* tncz = app.add_subcommand("tncz", "totally-non-cohomologous-to-zero check");
    add_common(tncz);
    auto* mapf = app.add_subcommand("map-formality", "map formality certificate");
    add_common(mapf);
    auto* replay = app.add_subcommand("replay-derivations", "module-derivation replay");
    add_common(replay);
    replay->add_option("--stage", opt.stage, "deformation stage to replay")->default_val(2);
    auto* fixtures_cmd = app.add_subcommand("fixtures", "list the bundled corpus");
    fixtures_cmd->add_flag("--json", opt.json, "canonical JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!fixtures_cmd->parsed()) {
            AlgebraDocument doc = load_document(opt.input);
            DocResolver resolve = make_resolver(opt.input);
            int top = doc_max_degree(doc, resolve);
            if (opt.cap < top + 2) {
                std::cerr << "error: cap " << opt.cap << " is too small for this input; use --cap "
                          << top + 2 << " or larger (max generator degree + 2)\n";
                return kExitUsage;
            }
        }
        if (cohomology->parsed()) return run_cohomology(opt);
        if (pres->parsed()) return run_presentation(opt);
        if (minimal->parsed()) return run_minimal_model(opt);
        if (bigraded->parsed()) return run_bigraded_model(opt);
        if (filtered->parsed()) return run_filtered_model(opt);
        if (formality->parsed()) return run_formality(opt);
        if (halperin->parsed()) return run_halperin(opt);
        if (tncz->parsed()) return run_tncz(opt);
        if (mapf->parsed()) return run_map_formality(opt);
        if (replay->parsed()) return run_replay(opt);
        if (fixtures_cmd->parsed()) return run_fixtures(opt);
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapError& e) {
        std::cerr << "cap error: " << e.what() << "\n";
        std::cerr << "increase --cap and rerun\n";
        return kExitUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
