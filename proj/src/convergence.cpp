#include "tropatt/convergence.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>

#include "tropatt/errors.hpp"
#include "tropatt/format.hpp"

namespace tropatt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t lowest_argmax(const TropicalMatrix& scores, const ValueVector* values,
                          std::size_t row, const char* op) {
  std::size_t winner = 0;
  TropicalScalar best = TropicalScalar::bottom();
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    const TropicalScalar cand =
        values ? trop_mul(scores(row, j), (*values)(j)) : scores(row, j);
    if (cand.is_bottom()) continue;
    if (best.is_bottom() || cand.value() > best.value()) {
      best = cand;
      winner = j;
    }
  }
  if (best.is_bottom()) {
    throw DomainError(std::string(op) + ": row " + std::to_string(row) +
                      " is entirely bottom");
  }
  return winner;
}

double sup_distance(const ValueVector& a, const ValueVector& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.len(); ++i) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      out = std::max(out, std::abs(a(i, c).value() - b(i, c).value()));
    }
  }
  return out;
}

}  // namespace

MarginReport row_margin(const TropicalMatrix& scores, std::size_t row) {
  if (row >= scores.rows()) {
    throw DomainError("row_margin: row " + std::to_string(row) + " out of range");
  }
  const std::size_t winner = lowest_argmax(scores, nullptr, row, "row_margin");
  const TropicalScalar row_max = scores(row, winner);
  TropicalScalar second = TropicalScalar::bottom();
  for (std::size_t j = 0; j < scores.cols(); ++j) {
    if (j == winner) continue;
    second = trop_add(second, scores(row, j));
  }
  const double margin = second.is_bottom() ? kInf : row_max.value() - second.value();
  return MarginReport{row, row_max, second, margin};
}

RegionClassification classify_region(std::span<const double> scores, double epsilon_tie) {
  if (scores.empty()) throw DomainError("classify_region: empty scores");
  if (!(epsilon_tie >= 0.0)) {
    throw DomainError("classify_region: epsilon_tie must be >= 0");
  }
  std::size_t winner = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (!std::isfinite(scores[j])) throw DomainError("classify_region: non-finite score");
    if (scores[j] > scores[winner]) winner = j;
  }
  double margin = kInf;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (j == winner) continue;
    margin = std::min(margin, scores[winner] - scores[j]);
  }
  return RegionClassification{winner, margin, margin <= epsilon_tie};
}

std::vector<ConvergenceRecord> sweep(const TropicalMatrix& scores, const ValueVector& values,
                                     std::span<const double> betas) {
  if (betas.empty()) throw DomainError("sweep: empty beta schedule");
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (!std::isfinite(betas[k]) || betas[k] <= 0.0) {
      throw DomainError("sweep: beta schedule must be positive and finite");
    }
    if (k > 0 && betas[k] <= betas[k - 1]) {
      throw DomainError("sweep: beta schedule must be strictly ascending");
    }
  }

  const ValueVector hard = hard_attention(scores, values);
  const ValueVector tropical = trop_matvec(scores, values);
  double min_margin = kInf;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const double margin = row_margin(scores, i).margin;
    if (std::isfinite(margin)) min_margin = std::min(min_margin, margin);
  }

  std::vector<ConvergenceRecord> records;
  records.reserve(betas.size());
  for (double beta : betas) {
    const ValueVector soft = attention_forward(scores, values, Beta(beta));
    const ValueVector log_space = log_space_attention(scores, values, Beta(beta));
    records.push_back(ConvergenceRecord{beta, sup_distance(soft, hard),
                                        sup_distance(log_space, tropical), min_margin});
  }
  return records;
}

std::vector<RowAgreement> agreement_report(const TropicalMatrix& scores,
                                           const ValueVector& values) {
  if (values.dim() != 1) {
    throw DomainError("agreement_report: dim-1 values required, got dim " +
                      std::to_string(values.dim()));
  }
  const ValueVector hard = hard_attention(scores, values);
  const ValueVector tropical = trop_matvec(scores, values);
  std::vector<RowAgreement> rows;
  rows.reserve(scores.rows());
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const std::size_t score_winner = lowest_argmax(scores, nullptr, i, "agreement_report");
    const std::size_t tropical_winner =
        lowest_argmax(scores, &values, i, "agreement_report");
    const double difference = std::abs(hard(i).value() - tropical(i).value());
    rows.push_back(
        RowAgreement{i, score_winner, tropical_winner, score_winner == tropical_winner,
                     difference});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const ConvergenceRecord> records) {
  out << "beta,dist_hard,dist_trop,min_margin\n";
  for (const ConvergenceRecord& r : records) {
    out << format_double(r.beta) << ',' << format_double(r.dist_hard) << ','
        << format_double(r.dist_trop) << ',' << format_double(r.min_margin) << '\n';
  }
}

}  // namespace tropatt
