#include "tropatt/attention.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tropatt/errors.hpp"
#include "tropatt/format.hpp"

namespace tropatt {

namespace {

void check_compatible(const TropicalMatrix& scores, const ValueVector& values,
                      const char* op) {
  if (scores.cols() != values.len()) {
    throw DomainError(std::string(op) + ": scores have " + std::to_string(scores.cols()) +
                      " columns but " + std::to_string(values.len()) + " values given");
  }
}

void check_all_finite(const ValueVector& values, const char* op) {
  if (!values.all_finite()) {
    throw DomainError(std::string(op) + ": values must be all finite");
  }
}

double row_max_finite(const TropicalMatrix& scores, std::size_t i, const char* op) {
  bool seen = false;
  double best = 0.0;
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    if (scores(i, j).is_bottom()) continue;
    const double v = scores(i, j).value();
    if (!seen || v > best) best = v;
    seen = true;
  }
  if (!seen) {
    throw DomainError(std::string(op) + ": row " + std::to_string(i) + " is entirely bottom");
  }
  return best;
}

}  // namespace

Beta::Beta(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("Beta: finite nonnegative value required, got " + format_double(value));
  }
}

EmbeddingSet::EmbeddingSet(std::size_t token_count, std::size_t dim,
                           std::vector<double> queries, std::vector<double> keys,
                           ValueVector values)
    : n_(token_count),
      d_(dim),
      queries_(std::move(queries)),
      keys_(std::move(keys)),
      values_(std::move(values)) {
  if (n_ == 0 || d_ == 0) {
    throw DomainError("EmbeddingSet: token count and dim must be >= 1");
  }
  if (queries_.size() != n_ * d_ || keys_.size() != n_ * d_) {
    throw DomainError("EmbeddingSet: Q and K must both hold " + std::to_string(n_ * d_) +
                      " entries");
  }
  for (double v : queries_) {
    if (!std::isfinite(v)) throw DomainError("EmbeddingSet: non-finite query entry");
  }
  for (double v : keys_) {
    if (!std::isfinite(v)) throw DomainError("EmbeddingSet: non-finite key entry");
  }
  if (values_.len() != n_) {
    throw DomainError("EmbeddingSet: values length " + std::to_string(values_.len()) +
                      " does not match token count " + std::to_string(n_));
  }
  check_all_finite(values_, "EmbeddingSet");
}

SoftmaxWeights::SoftmaxWeights(std::size_t rows, std::size_t cols, std::vector<double> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
  if (weights_.size() != rows_ * cols_) {
    throw DomainError("SoftmaxWeights: expected " + std::to_string(rows_ * cols_) +
                      " entries, got " + std::to_string(weights_.size()));
  }
}

TropicalMatrix score_matrix(const EmbeddingSet& embeddings) {
  const std::size_t n = embeddings.token_count();
  TropicalMatrix scores(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < embeddings.dim(); ++c) {
        dot += embeddings.query(i, c) * embeddings.key(j, c);
      }
      scores(i, j) = dot;
    }
  }
  return scores;
}

double log_sum_exp(std::span<const double> xs, Beta beta) {
  if (xs.empty()) throw DomainError("log_sum_exp: empty input");
  if (beta.value() == 0.0) throw DomainError("log_sum_exp: beta must be > 0");
  double top = xs[0];
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError("log_sum_exp: non-finite input");
    if (x > top) top = x;
  }
  double sum = 0.0;
  for (double x : xs) sum += std::exp(beta.value() * (x - top));
  return top + std::log(sum) / beta.value();
}

SoftmaxWeights softmax_weights(const TropicalMatrix& scores, Beta beta) {
  std::vector<double> weights(scores.rows() * scores.cols(), 0.0);
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const double top = row_max_finite(scores, i, "softmax_weights");
    double denom = 0.0;
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      if (scores(i, j).is_bottom()) continue;
      const double w = std::exp(beta.value() * (scores(i, j).value() - top));
      weights[i * scores.cols() + j] = w;
      denom += w;
    }
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      weights[i * scores.cols() + j] /= denom;
    }
  }
  return SoftmaxWeights(scores.rows(), scores.cols(), std::move(weights));
}

AttentionOutput attention_forward(const TropicalMatrix& scores, const ValueVector& values,
                                  Beta beta) {
  check_compatible(scores, values, "attention_forward");
  check_all_finite(values, "attention_forward");
  const SoftmaxWeights weights = softmax_weights(scores, beta);
  ValueVector out(scores.rows(), values.dim());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    for (std::size_t c = 0; c < values.dim(); ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < scores.cols(); ++j) {
        acc += weights(i, j) * values(j, c).value();
      }
      out(i, c) = acc;
    }
  }
  return out;
}

AttentionOutput hard_attention(const TropicalMatrix& scores, const ValueVector& values) {
  check_compatible(scores, values, "hard_attention");
  check_all_finite(values, "hard_attention");
  ValueVector out(scores.rows(), values.dim());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const double top = row_max_finite(scores, i, "hard_attention");
    for (std::size_t c = 0; c < values.dim(); ++c) {
      double acc = 0.0;
      std::size_t ties = 0;
      for (std::size_t j = 0; j < scores.cols(); ++j) {
        if (scores(i, j).is_bottom() || scores(i, j).value() != top) continue;
        acc += values(j, c).value();
        ++ties;
      }
      out(i, c) = acc / static_cast<double>(ties);
    }
  }
  return out;
}

ValueVector log_space_attention(const TropicalMatrix& scores, const ValueVector& values,
                                Beta beta) {
  check_compatible(scores, values, "log_space_attention");
  if (beta.value() == 0.0) throw DomainError("log_space_attention: beta must be > 0");
  ValueVector out(scores.rows(), values.dim());
  std::vector<double> terms;
  terms.reserve(scores.cols());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    for (std::size_t c = 0; c < values.dim(); ++c) {
      terms.clear();
      for (std::size_t j = 0; j < scores.cols(); ++j) {
        const TropicalScalar cand = trop_mul(scores(i, j), values(j, c));
        if (cand.is_finite()) terms.push_back(cand.value());
      }
      if (terms.empty()) {
        throw DomainError("log_space_attention: row " + std::to_string(i) +
                          " has no finite score + value term");
      }
      out(i, c) = log_sum_exp(terms, beta);
    }
  }
  return out;
}

}  // namespace tropatt
