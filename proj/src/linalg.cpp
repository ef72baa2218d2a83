#include "tropatt/linalg.hpp"

#include <limits>
#include <string>
#include <utility>

#include "tropatt/errors.hpp"

namespace tropatt {

namespace {

constexpr std::size_t kNoWitness = std::numeric_limits<std::size_t>::max();

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// One relaxation layer: per row the optimum of A(i,j) + v_j and the lowest
// column index attaining it (kNoWitness when the whole row is bottom).
// dim-1 values only.
std::pair<ValueVector, std::vector<std::size_t>> relax_with_witness(
    const TropicalMatrix& matrix, const ValueVector& values) {
  ValueVector out(matrix.rows());
  std::vector<std::size_t> witness(matrix.rows(), kNoWitness);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    TropicalScalar best = TropicalScalar::bottom();
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const TropicalScalar cand = trop_mul(matrix(i, j), values(j));
      if (cand.is_bottom()) continue;
      if (best.is_bottom() || cand.value() > best.value()) {
        best = cand;
        witness[i] = j;
      }
    }
    out(i) = best;
  }
  return {std::move(out), std::move(witness)};
}

}  // namespace

TropicalMatrix::TropicalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw DomainError("TropicalMatrix: dimensions must be >= 1, got " + dims(rows, cols));
  }
}

TropicalMatrix TropicalMatrix::identity(std::size_t n) {
  TropicalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
  return m;
}

TropicalMatrix TropicalMatrix::from_rows(const std::vector<std::vector<TropicalScalar>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DomainError("TropicalMatrix: at least one row and column required");
  }
  TropicalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw DomainError("TropicalMatrix: ragged row " + std::to_string(i));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

TropicalMatrix TropicalMatrix::from_rows(
    std::initializer_list<std::initializer_list<TropicalScalar>> rows) {
  std::vector<std::vector<TropicalScalar>> copy;
  copy.reserve(rows.size());
  for (const auto& row : rows) copy.emplace_back(row);
  return from_rows(copy);
}

ValueVector::ValueVector(std::size_t len, std::size_t dim)
    : len_(len), dim_(dim), entries_(len * dim) {
  if (len == 0 || dim == 0) {
    throw DomainError("ValueVector: len and dim must be >= 1, got " + dims(len, dim));
  }
}

ValueVector ValueVector::from_scalars(std::vector<TropicalScalar> entries) {
  ValueVector v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v(i) = entries[i];
  return v;
}

ValueVector ValueVector::constant(std::size_t len, TropicalScalar value) {
  ValueVector v(len);
  for (std::size_t i = 0; i < len; ++i) v(i) = value;
  return v;
}

bool ValueVector::all_finite() const noexcept {
  for (const TropicalScalar& e : entries_) {
    if (e.is_bottom()) return false;
  }
  return true;
}

ValueVector trop_matvec(const TropicalMatrix& matrix, const ValueVector& values) {
  if (matrix.cols() != values.len()) {
    throw DomainError("trop_matvec: matrix is " + dims(matrix.rows(), matrix.cols()) +
                      " but vector length is " + std::to_string(values.len()));
  }
  ValueVector out(matrix.rows(), values.dim());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t c = 0; c < values.dim(); ++c) {
      TropicalScalar acc = TropicalScalar::bottom();
      for (std::size_t j = 0; j < matrix.cols(); ++j) {
        acc = trop_add(acc, trop_mul(matrix(i, j), values(j, c)));
      }
      out(i, c) = acc;
    }
  }
  return out;
}

TropicalMatrix trop_matmul(const TropicalMatrix& a, const TropicalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DomainError("trop_matmul: inner dimensions disagree, " + dims(a.rows(), a.cols()) +
                      " vs " + dims(b.rows(), b.cols()));
  }
  TropicalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < b.cols(); ++k) {
      TropicalScalar acc = TropicalScalar::bottom();
      for (std::size_t j = 0; j < a.cols(); ++j) {
        acc = trop_add(acc, trop_mul(a(i, j), b(j, k)));
      }
      out(i, k) = acc;
    }
  }
  return out;
}

TropicalMatrix trop_power(const TropicalMatrix& matrix, std::size_t exponent) {
  if (!matrix.square()) {
    throw DomainError("trop_power: matrix must be square, got " +
                      dims(matrix.rows(), matrix.cols()));
  }
  if (exponent == 0) {
    throw DomainError("trop_power: exponent must be >= 1 (the identity is available "
                      "as TropicalMatrix::identity)");
  }
  TropicalMatrix result = TropicalMatrix::identity(matrix.rows());
  TropicalMatrix base = matrix;
  std::size_t e = exponent;
  while (true) {
    if (e & 1u) result = trop_matmul(result, base);
    e >>= 1u;
    if (e == 0) break;
    base = trop_matmul(base, base);
  }
  return result;
}

WitnessVector argmax_row_witness(const TropicalMatrix& matrix, const ValueVector& values) {
  if (matrix.cols() != values.len()) {
    throw DomainError("argmax_row_witness: matrix is " + dims(matrix.rows(), matrix.cols()) +
                      " but vector length is " + std::to_string(values.len()));
  }
  if (values.dim() != 1) {
    throw DomainError("argmax_row_witness: dim-1 values required, got dim " +
                      std::to_string(values.dim()));
  }
  auto [out, witness] = relax_with_witness(matrix, values);
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (witness[i] == kNoWitness) {
      throw DomainError("argmax_row_witness: row " + std::to_string(i) +
                        " has no finite candidate");
    }
  }
  return WitnessVector{std::move(witness)};
}

PathWitness reconstruct_path(const TropicalMatrix& matrix, const ValueVector& start,
                             std::size_t hops, std::size_t target) {
  if (!matrix.square()) {
    throw DomainError("reconstruct_path: matrix must be square, got " +
                      dims(matrix.rows(), matrix.cols()));
  }
  const std::size_t n = matrix.rows();
  if (start.len() != n) {
    throw DomainError("reconstruct_path: start length " + std::to_string(start.len()) +
                      " does not match node count " + std::to_string(n));
  }
  if (start.dim() != 1) {
    throw DomainError("reconstruct_path: dim-1 start values required");
  }
  if (hops == 0) throw DomainError("reconstruct_path: hops must be >= 1");
  if (target >= n) {
    throw DomainError("reconstruct_path: target " + std::to_string(target) +
                      " out of range for " + std::to_string(n) + " nodes");
  }

  std::vector<std::vector<std::size_t>> layer_witness;
  layer_witness.reserve(hops);
  ValueVector dist = start;
  for (std::size_t layer = 0; layer < hops; ++layer) {
    auto [next, witness] = relax_with_witness(matrix, dist);
    layer_witness.push_back(std::move(witness));
    dist = std::move(next);
  }
  if (dist(target).is_bottom()) {
    throw DomainError("reconstruct_path: no finite path of length " + std::to_string(hops) +
                      " into node " + std::to_string(target));
  }

  std::vector<std::size_t> nodes(hops + 1);
  nodes[hops] = target;
  for (std::size_t layer = hops; layer > 0; --layer) {
    nodes[layer - 1] = layer_witness[layer - 1][nodes[layer]];
  }
  return PathWitness{std::move(nodes), dist(target)};
}

ValueVector apply_layers(const std::vector<TropicalMatrix>& layers, ValueVector state) {
  for (const TropicalMatrix& layer : layers) {
    state = trop_matvec(layer, state);
  }
  return state;
}

}  // namespace tropatt
