#pragma once

// JSON schemas (schema_version 1) for presentations, Lie algebras, matched
// pairs and split-base models, and JSON renderings of the reports.
// Rationals are strings ("-3/2"); Gaussian rationals are {"re","im"};
// polynomials are strings in the generator names.

#include "courant/homology.hpp"
#include "courant/lie.hpp"
#include "courant/matched.hpp"
#include "courant/presentation.hpp"
#include "courant/sections.hpp"
#include "courant/split.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace courant::io {

using json = nlohmann::json;

constexpr int schema_version = 1;

/// Malformed input; `where` is a JSON path or a file position.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Parses a file; syntax errors report line and column.
json read_file(const std::string& path);

Scalar scalar_from(const json& j, Field field, const std::string& where);
json scalar_to(const Scalar& s);
Matrix matrix_from(const json& j, Field field, const std::string& where);
json matrix_to(const Matrix& m);

LieAlgebra lie_from(const json& j, Field field, const std::string& where = "algebra");
json lie_to(const LieAlgebra& g);

// "kind": "presentation" (default), "quadratic_lie", "alekseev_double",
// "drinfeld_double" or "twisted_dorfman".  The file's "field" overrides
// the default.
CourantPresentation presentation_from(const json& j, Field default_field, const std::string& where = "$");
json presentation_to(const CourantPresentation& s);

MatchedPair matched_from(const json& j, Field default_field);
json matched_to(const MatchedPair& mp);

SplitBaseModel split_from(const json& j, Field default_field);

json report_to(const CourantReport& r);
json report_to(const MatchedReport& r);
json report_to(const SplitCohomology& h);
json report_to(const SheetTables& t);
json report_to(const SpectralSequence& s);

}  // namespace courant::io
