#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tropatt/linalg.hpp"

namespace tropatt {

// Inverse temperature of the softmax. Finite and >= 0; zero means uniform
// weighting and is rejected by the log-space operations, where 1/beta is
// needed.
class Beta {
 public:
  explicit Beta(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Query/key/value embeddings for one token set: Q and K are token_count x dim
// row-major blocks, values one row per token. Every entry finite.
class EmbeddingSet {
 public:
  EmbeddingSet(std::size_t token_count, std::size_t dim, std::vector<double> queries,
               std::vector<double> keys, ValueVector values);

  std::size_t token_count() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  double query(std::size_t i, std::size_t c) const noexcept { return queries_[i * d_ + c]; }
  double key(std::size_t j, std::size_t c) const noexcept { return keys_[j * d_ + c]; }
  const ValueVector& values() const noexcept { return values_; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> queries_;
  std::vector<double> keys_;
  ValueVector values_;
};

// Row-stochastic weight matrix: entries in [0, 1], each row summing to 1
// within 1e-12. Masked (bottom) score entries carry weight exactly 0.
class SoftmaxWeights {
 public:
  SoftmaxWeights(std::size_t rows, std::size_t cols, std::vector<double> weights);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return weights_[i * cols_ + j];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
};

using AttentionOutput = ValueVector;

// Score matrix of raw query/key inner products, A(i,j) = <q_i, k_j>. No
// 1/sqrt(dim) scaling; callers pre-scale if they want it.
TropicalMatrix score_matrix(const EmbeddingSet& embeddings);

// (1/beta) * log(sum_j exp(beta * x_j)), stabilized by factoring out the
// maximum before exponentiating. Exceeds max(x) by at most log(n)/beta and
// never overflows for |x_j| <= 1e6, beta <= 1e6. Requires beta > 0.
double log_sum_exp(std::span<const double> xs, Beta beta);

// Row-wise softmax of beta * scores. Bottom entries get weight exactly 0; a
// row with no finite entry is an error. beta = 0 yields uniform weights over
// each row's finite entries.
SoftmaxWeights softmax_weights(const TropicalMatrix& scores, Beta beta);

// y_i = sum_j alpha_ij(beta) * v_j, componentwise. Values must be all
// finite; each output lands in the convex hull of the unmasked values.
AttentionOutput attention_forward(const TropicalMatrix& scores, const ValueVector& values,
                                  Beta beta);

// Sharp limit of attention_forward: per row the value whose score is
// maximal, or the arithmetic mean of the tied values when the maximum is
// attained more than once (the true pointwise limit under ties).
AttentionOutput hard_attention(const TropicalMatrix& scores, const ValueVector& values);

// Row i -> (1/beta) * log sum_j exp(beta * (A(i,j) + v_j)), skipping bottom
// terms. Approaches trop_matvec(scores, values) from above at rate
// log(n)/beta. Requires beta > 0 and a finite candidate per row.
ValueVector log_space_attention(const TropicalMatrix& scores, const ValueVector& values,
                                Beta beta);

}  // namespace tropatt
