#pragma once

// JSON interchange for every domain type, and CSV for human-facing summaries.
// Parsers validate fully: malformed documents raise ParseError naming the
// offending field, well-formed documents that break an algebraic law raise
// InvariantViolation naming the law.

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metabel/algcore.hpp"
#include "metabel/codimone.hpp"
#include "metabel/cohomo.hpp"
#include "metabel/datum.hpp"
#include "metabel/dimone.hpp"
#include "metabel/exactla.hpp"

namespace metabel {

using Json = nlohmann::ordered_json;

/// {"p", "rows", "cols", "entries": [[int]]}
Json to_json(const Matrix& m);
/// {"p", "coords": [int]}
Json to_json(const Vector& v);
/// {"p", "dim", "sc": [[[int]]], "labels"?: [string]}; sc[i][j][k] = c(i, j, k).
Json to_json(const Algebra& a);
/// {"p", "dimP", "dimV", "right": [Matrix], "left": [Matrix]}
Json to_json(const DiscreteBimodule& b);
/// {"p", "dimP", "dimV", "right", "left", "theta": [[Vector]]}
Json to_json(const MetabelianDatum& d);
/// {"p", "n", "matrix": [[int]]}
Json to_json(const BilinearForm& f);
/// {"p", "n", "X": Matrix, "Y": Matrix}
Json to_json(const TPair& t);
/// {"u", "lambda", "psi"}
Json to_json(const GElement& g);
/// Array of {"bimodule", "thetaRep", "algebra"}.
Json to_json(const ExtCatalog& c);

/// "bimodule_id,cocycles,coboundaries,classes" plus one row per bimodule.
std::string ext_summary_csv(const ExtCatalog& c);

Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Algebra algebra_from_json(const Json& j);
DiscreteBimodule bimodule_from_json(const Json& j);
MetabelianDatum datum_from_json(const Json& j);
BilinearForm form_from_json(const Json& j);
TPair tpair_from_json(const Json& j);

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

Algebra parse_algebra(const std::filesystem::path& path);
MetabelianDatum parse_datum(const std::filesystem::path& path);
BilinearForm parse_form(const std::filesystem::path& path);
TPair parse_tpair(const std::filesystem::path& path);

/// Comma separated coordinates such as "0,1".
Vector parse_vector_list(PrimeField field, const std::string& text);

}  // namespace metabel
