#pragma once

// JSON and text rendering for quivers, Laurent coefficients, algebra
// elements and transition matrices. Schemas are in docs/schemas.md.

#include "hallbasis/bar_canonical.hpp"
#include "hallbasis/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hallbasis {

using Json = nlohmann::ordered_json;

/// {"label"?, "vertices": [...], "arrows": [{"id","src","tgt"}],
///  "vertex_perm": {name: name}, "arrow_perm": {id: id}, "period"?}
/// Throws ParseError on malformed input; admissibility is not checked here.
QuiverWithAutomorphism quiver_from_json(const Json& j);
Json quiver_to_json(const QuiverWithAutomorphism& q);

/// {"<exp>": [c0, c1, ...]} with cyclotomic coordinates in the power basis.
Json laurent_to_json(const Laurent& x);
/// Inverse of laurent_to_json; `omega_order` is the order of w.
Laurent laurent_from_json(const Json& j, int omega_order = 1);
/// Largest w order among the nonzero coefficients (1 if omega-free).
int omega_order(const Laurent& x);

/// {"terms": [{"class": "<canonical string>", "coeff": {...}}], "omega_order"?}
Json element_to_json(const QuiverType& type, const AlgebraElement& x);
AlgebraElement element_from_json(const QuiverType& type, const Json& j);

enum class OutputFormat { Json, Csv, Table, Latex };

OutputFormat parse_format(const std::string& s);

/// {"role", "classes": [...], "entries": [[laurent, ...], ...]}
Json matrix_to_json(const QuiverType& type, const TransitionMatrix& m);
/// One rendering of a labelled matrix in a text format (not Json).
std::string render_matrix(const QuiverType& type, const TransitionMatrix& m, OutputFormat f);

/// Rows of strings rendered as an aligned table, csv or latex tabular.
std::string render_rows(const std::vector<std::vector<std::string>>& rows, OutputFormat f);

Json gs_report_to_json(const GsReport& g);
Json check_to_json(const CheckResult& r);

}  // namespace hallbasis
