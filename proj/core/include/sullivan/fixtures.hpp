#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sullivan/dsl.hpp"

namespace sullivan {

// The bundled corpus: every algebra the tool ships as a worked example,
// embedded so the CLI works from any directory. The same texts are checked
// in under fixtures/.
struct Fixture {
    std::string name;
    std::string description;
    std::string text;
};

const std::vector<Fixture>& fixtures();
std::optional<std::string> fixture_text(const std::string& name);
AlgebraDocument fixture_document(const std::string& name);

// Resolves fibration base/fiber references against the embedded corpus.
DocResolver fixture_resolver();

}  // namespace sullivan
