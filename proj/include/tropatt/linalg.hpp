#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tropatt/tropical.hpp"

namespace tropatt {

// Dense row-major matrix over the max-plus scalar. Absent graph edges are
// encoded as bottom entries; there is no sparse format.
class TropicalMatrix {
 public:
  // rows x cols, every entry bottom. Both dimensions must be >= 1.
  TropicalMatrix(std::size_t rows, std::size_t cols);

  // 0 on the diagonal, bottom elsewhere: the (x)-identity.
  static TropicalMatrix identity(std::size_t n);

  static TropicalMatrix from_rows(std::initializer_list<std::initializer_list<TropicalScalar>> rows);
  static TropicalMatrix from_rows(const std::vector<std::vector<TropicalScalar>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  // Unchecked element access.
  TropicalScalar operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * cols_ + j];
  }
  TropicalScalar& operator()(std::size_t i, std::size_t j) noexcept {
    return entries_[i * cols_ + j];
  }

  friend bool operator==(const TropicalMatrix&, const TropicalMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<TropicalScalar> entries_;
};

// Column of values, one row per token. dim > 1 stores a row-major len x dim
// block for vector-valued tokens; every operation treats components
// independently.
class ValueVector {
 public:
  explicit ValueVector(std::size_t len, std::size_t dim = 1);

  static ValueVector from_scalars(std::vector<TropicalScalar> entries);
  static ValueVector constant(std::size_t len, TropicalScalar value);

  std::size_t len() const noexcept { return len_; }
  std::size_t dim() const noexcept { return dim_; }

  TropicalScalar operator()(std::size_t i, std::size_t c = 0) const noexcept {
    return entries_[i * dim_ + c];
  }
  TropicalScalar& operator()(std::size_t i, std::size_t c = 0) noexcept {
    return entries_[i * dim_ + c];
  }

  bool all_finite() const noexcept;

  friend bool operator==(const ValueVector&, const ValueVector&) = default;

 private:
  std::size_t len_;
  std::size_t dim_;
  std::vector<TropicalScalar> entries_;
};

// Per row, the column realizing that row's optimum (lowest index on ties).
struct WitnessVector {
  std::vector<std::size_t> indices;

  friend bool operator==(const WitnessVector&, const WitnessVector&) = default;
};

// A node sequence j_0 -> ... -> j_{hops-1} -> target together with its
// cumulative weight: start value at j_0 plus every traversed edge score.
struct PathWitness {
  std::vector<std::size_t> nodes;
  TropicalScalar total_weight;

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

// out_i = max_j (A(i,j) + v_j), componentwise for dim > 1.
ValueVector trop_matvec(const TropicalMatrix& matrix, const ValueVector& values);

// out(i,k) = max_j (A(i,j) + B(j,k)).
TropicalMatrix trop_matmul(const TropicalMatrix& a, const TropicalMatrix& b);

// exponent-fold max-plus product of a square matrix with itself, exponent >= 1.
// Uses repeated squaring; on operands whose sums round exactly this matches
// the sequential product bit for bit.
TropicalMatrix trop_power(const TropicalMatrix& matrix, std::size_t exponent);

// Per row, the smallest j attaining max_j (A(i,j) + v_j). Requires dim 1 and
// at least one finite candidate per row.
WitnessVector argmax_row_witness(const TropicalMatrix& matrix, const ValueVector& values);

// Optimal hops-step node sequence into `target`, recovered by storing one
// witness per relaxation layer and backtracking. The total weight equals
// (A^(x hops) (x) start)_target, which must be finite.
PathWitness reconstruct_path(const TropicalMatrix& matrix, const ValueVector& start,
                             std::size_t hops, std::size_t target);

// Folds state through a list of per-layer matrices, first layer first.
ValueVector apply_layers(const std::vector<TropicalMatrix>& layers, ValueVector state);

}  // namespace tropatt
