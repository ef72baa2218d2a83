#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "tropatt/attention.hpp"
#include "tropatt/convergence.hpp"
#include "tropatt/linalg.hpp"
#include "tropatt/pathfinding.hpp"

namespace tropatt {

// std::map-backed document type: object keys serialize alphabetically, so a
// dump of equal documents is byte-identical.
using Json = nlohmann::json;

// json::parse with errors rethrown as SchemaError.
Json parse_json_text(std::string_view text);

// Reads and parses a file; unreadable paths and malformed JSON both surface
// as SchemaError.
Json load_json_file(const std::string& path);

// Scalars: finite values as JSON numbers, bottom as null (canonical). The
// reader additionally accepts "-inf" and decimal strings for hand-written
// files.
Json tropical_to_json(TropicalScalar value);
TropicalScalar tropical_from_json(const Json& node);

// {"rows": R, "cols": C, "entries": [[...], ...]}, null = bottom.
Json matrix_to_json(const TropicalMatrix& matrix);
TropicalMatrix matrix_from_json(const Json& node);

// {"len": N, "entries": [...]}: flat entries for dim 1, one nested array per
// token otherwise.
Json vector_to_json(const ValueVector& values);
ValueVector vector_from_json(const Json& node);

// {"n": N, "d": D, "Q": [[...]], "K": [[...]], "values": [...]}; Q and K are
// N rows of D finite numbers, values flat or nested.
EmbeddingSet embeddings_from_json(const Json& node);

// {"n": N, "weights": [[...]], "labels": [...]}; weights is N x N with null
// = bottom, labels optional.
TokenGraph graph_from_json(const Json& node);

Json witness_to_json(const PathWitness& witness);

// MarginReport plus the boundary flag; an infinite margin (no finite
// competitor) serializes as the string "inf".
Json margin_to_json(const MarginReport& report, bool on_boundary);

Json agreement_to_json(const RowAgreement& row);

}  // namespace tropatt
