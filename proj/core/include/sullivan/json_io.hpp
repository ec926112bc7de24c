#pragma once

#include <json.hpp>

#include "sullivan/dsl.hpp"
#include "sullivan/formality.hpp"
#include "sullivan/minimal.hpp"

namespace sullivan {

using json = nlohmann::ordered_json;

// Canonical JSON: object keys in fixed schema order, arrays in canonical
// (deterministic) order, rationals as {"num": "...", "den": "..."} strings.

json to_json(const Rational& r);
json to_json(const FreeCGA& alg, const Polynomial& p);
json to_json(const AlgebraDocument& doc);
json to_json(const FiniteGradedAlgebra& H);
json to_json(const BigradedModel& m);
json to_json(const FilteredModel& f);
json to_json(const MinimalModel& m, const CDGA& input);
json to_json(const RelativeModel& r);
json to_json(const FormalityVerdict& v, const FreeCGA* model_algebra);
json to_json(const NegativeDerivationReport& r, const FiniteGradedAlgebra& H);
json to_json(const TnczReport& r);
json to_json(const MapFormalityReport& r, const FreeCGA* model_algebra);
json to_json(const ReplayReport& r);

// Reads a document from its JSON form. Validation failures raise SchemaError
// with the offending JSON path (e.g. "$.generators[0].degree").
AlgebraDocument document_from_json(const json& j);

// Canonical serialization: two-space indent, sorted schema order, newline at
// the end. Byte-identical across runs for equal inputs.
std::string dump_canonical(const json& j);

}  // namespace sullivan
