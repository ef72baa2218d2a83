#include "tropatt/io.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropatt/errors.hpp"
#include "tropatt/tropical.hpp"

namespace tropatt {

namespace {

std::size_t require_count(const Json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_number_integer() || node[key].get<long long>() < 1) {
    throw SchemaError(std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(node[key].get<long long>());
}

const Json& require_array(const Json& node, const char* key, std::size_t size) {
  if (!node.contains(key) || !node[key].is_array()) {
    throw SchemaError(std::string("\"") + key + "\" must be an array");
  }
  if (node[key].size() != size) {
    throw SchemaError(std::string("\"") + key + "\" must have " + std::to_string(size) +
                      " entries, got " + std::to_string(node[key].size()));
  }
  return node[key];
}

void require_object(const Json& node, const char* what) {
  if (!node.is_object()) throw SchemaError(std::string(what) + " must be a JSON object");
}

double finite_number(const Json& node, const char* context) {
  if (!node.is_number()) throw SchemaError(std::string(context) + " must be a number");
  const double value = node.get<double>();
  if (!std::isfinite(value)) throw SchemaError(std::string(context) + " is out of range");
  return value;
}

// n rows of d finite numbers, flattened row-major.
std::vector<double> number_block(const Json& node, const char* key, std::size_t n, std::size_t d) {
  const Json& outer = require_array(node, key, n);
  const std::string context = std::string("\"") + key + "\" entry";
  std::vector<double> flat;
  flat.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = outer[i];
    if (!row.is_array() || row.size() != d) {
      throw SchemaError(std::string("\"") + key + "\" row " + std::to_string(i) + " must be an array of " +
                        std::to_string(d) + " numbers");
    }
    for (std::size_t c = 0; c < d; ++c) {
      flat.push_back(finite_number(row[c], context.c_str()));
    }
  }
  return flat;
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    // Covers malformed text and out-of-range number literals alike.
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw SchemaError("cannot read input file: " + path);
  return parse_json_text(buffer.str());
}

Json tropical_to_json(TropicalScalar value) {
  if (value.is_bottom()) return nullptr;
  return value.value();
}

TropicalScalar tropical_from_json(const Json& node) {
  if (node.is_null()) return TropicalScalar::bottom();
  if (node.is_string()) return parse_tropical(node.get<std::string>());
  if (node.is_number()) {
    try {
      return TropicalScalar(node.get<double>());
    } catch (const DomainError&) {
      throw SchemaError("numeric entry is out of range");
    }
  }
  throw SchemaError("entries must be numbers, null, or \"-inf\"");
}

Json matrix_to_json(const TropicalMatrix& matrix) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix.cols(); ++j) row.push_back(tropical_to_json(matrix(i, j)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["rows"] = matrix.rows();
  out["cols"] = matrix.cols();
  out["entries"] = std::move(entries);
  return out;
}

TropicalMatrix matrix_from_json(const Json& node) {
  require_object(node, "matrix");
  const std::size_t rows = require_count(node, "rows");
  const std::size_t cols = require_count(node, "cols");
  const Json& entries = require_array(node, "entries", rows);
  TropicalMatrix matrix(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || row.size() != cols) {
      throw SchemaError("matrix row " + std::to_string(i) + " must be an array of " +
                        std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) matrix(i, j) = tropical_from_json(row[j]);
  }
  return matrix;
}

Json vector_to_json(const ValueVector& values) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < values.len(); ++i) {
    if (values.dim() == 1) {
      entries.push_back(tropical_to_json(values(i)));
    } else {
      Json row = Json::array();
      for (std::size_t c = 0; c < values.dim(); ++c) row.push_back(tropical_to_json(values(i, c)));
      entries.push_back(std::move(row));
    }
  }
  Json out;
  out["len"] = values.len();
  out["entries"] = std::move(entries);
  return out;
}

ValueVector vector_from_json(const Json& node) {
  require_object(node, "vector");
  const std::size_t len = require_count(node, "len");
  const Json& entries = require_array(node, "entries", len);
  const bool nested = entries[0].is_array();
  const std::size_t dim = nested ? entries[0].size() : 1;
  if (nested && dim == 0) throw SchemaError("vector entry rows must be nonempty");
  ValueVector values(len, dim);
  for (std::size_t i = 0; i < len; ++i) {
    const Json& row = entries[i];
    if (nested) {
      if (!row.is_array() || row.size() != dim) {
        throw SchemaError("vector entry " + std::to_string(i) + " must be an array of " +
                          std::to_string(dim) + " entries");
      }
      for (std::size_t c = 0; c < dim; ++c) values(i, c) = tropical_from_json(row[c]);
    } else {
      if (row.is_array()) throw SchemaError("vector entries must be uniformly flat or nested");
      values(i) = tropical_from_json(row);
    }
  }
  return values;
}

EmbeddingSet embeddings_from_json(const Json& node) {
  require_object(node, "embedding set");
  const std::size_t n = require_count(node, "n");
  const std::size_t d = require_count(node, "d");
  std::vector<double> queries = number_block(node, "Q", n, d);
  std::vector<double> keys = number_block(node, "K", n, d);

  const Json& raw_values = require_array(node, "values", n);
  const bool nested = raw_values[0].is_array();
  const std::size_t value_dim = nested ? raw_values[0].size() : 1;
  if (nested && value_dim == 0) throw SchemaError("\"values\" rows must be nonempty");
  ValueVector values(n, value_dim);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = raw_values[i];
    if (nested) {
      if (!row.is_array() || row.size() != value_dim) {
        throw SchemaError("\"values\" row " + std::to_string(i) + " must be an array of " +
                          std::to_string(value_dim) + " numbers");
      }
      for (std::size_t c = 0; c < value_dim; ++c) {
        values(i, c) = TropicalScalar(finite_number(row[c], "\"values\" entry"));
      }
    } else {
      values(i) = TropicalScalar(finite_number(row, "\"values\" entry"));
    }
  }
  return EmbeddingSet(n, d, std::move(queries), std::move(keys), std::move(values));
}

TokenGraph graph_from_json(const Json& node) {
  require_object(node, "graph");
  const std::size_t n = require_count(node, "n");
  const Json& outer = require_array(node, "weights", n);
  TropicalMatrix weights(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = outer[i];
    if (!row.is_array() || row.size() != n) {
      throw SchemaError("\"weights\" row " + std::to_string(i) + " must be an array of " +
                        std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) weights(i, j) = tropical_from_json(row[j]);
  }
  std::vector<std::string> labels;
  if (node.contains("labels")) {
    const Json& raw = require_array(node, "labels", n);
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!raw[i].is_string()) throw SchemaError("\"labels\" entries must be strings");
      labels.push_back(raw[i].get<std::string>());
    }
  }
  return TokenGraph(std::move(weights), std::move(labels));
}

Json witness_to_json(const PathWitness& witness) {
  Json out;
  out["nodes"] = witness.nodes;
  out["total_weight"] = tropical_to_json(witness.total_weight);
  return out;
}

Json margin_to_json(const MarginReport& report, bool on_boundary) {
  Json out;
  out["row"] = report.row;
  out["row_max"] = tropical_to_json(report.row_max);
  out["second_max"] = tropical_to_json(report.second_max);
  if (std::isfinite(report.margin)) {
    out["margin"] = report.margin;
  } else {
    out["margin"] = "inf";
  }
  out["on_boundary"] = on_boundary;
  return out;
}

Json agreement_to_json(const RowAgreement& row) {
  Json out;
  out["row"] = row.row;
  out["score_winner"] = row.score_winner;
  out["tropical_winner"] = row.tropical_winner;
  out["agree"] = row.agree;
  out["difference"] = row.difference;
  return out;
}

}  // namespace tropatt
