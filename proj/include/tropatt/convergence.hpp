#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tropatt/attention.hpp"
#include "tropatt/linalg.hpp"

namespace tropatt {

// Default absolute tie tolerance for region classification. Score scales are
// unnormalized inner products, so this is configurable everywhere it is used.
inline constexpr double kDefaultEpsilonTie = 1e-9;

// Gap between a row's best and second-best score. A margin of zero means the
// row maximum is tied; +inf means the row has no finite competitor.
struct MarginReport {
  std::size_t row;
  TropicalScalar row_max;
  TropicalScalar second_max;  // bottom when only one entry is finite
  double margin;              // row_max - second_max, +inf without competitor
};

// Requires at least one finite entry in the row. The winning entry is the
// lowest-index maximum; second_max ranges over the remaining columns.
MarginReport row_margin(const TropicalMatrix& scores, std::size_t row);

// Which vertex of the weight simplex a score row concentrates on as the
// softmax sharpens, and whether it sits within epsilon_tie of a tie boundary.
struct RegionClassification {
  std::size_t winner;  // lowest index attaining the maximum
  double margin;       // winner minus runner-up, +inf for a single score
  bool on_boundary;    // margin <= epsilon_tie
};

RegionClassification classify_region(std::span<const double> scores, double epsilon_tie);

// One sampled inverse temperature: sup-norm distances between finite-beta
// attention and each of its two sharp limits. Distances take the max over
// rows and components, so a failing row is directly visible.
struct ConvergenceRecord {
  double beta;
  double dist_hard;   // ||attention_forward - hard_attention||_inf
  double dist_trop;   // ||log_space_attention - trop_matvec||_inf
  double min_margin;  // smallest finite row margin, +inf when none is finite
};

// One record per beta. The schedule must be nonempty, strictly ascending,
// and positive; values must be all finite and no score row entirely bottom.
std::vector<ConvergenceRecord> sweep(const TropicalMatrix& scores, const ValueVector& values,
                                     std::span<const double> betas);

// Per-row comparison of the two sharp-limit readings: the score argmax (what
// hard attention gathers) against the argmax of score + value (what the
// max-plus product selects). The two coincide for constant values but can
// diverge otherwise; `difference` quantifies the gap.
struct RowAgreement {
  std::size_t row;
  std::size_t score_winner;     // lowest argmax of A(i, j)
  std::size_t tropical_winner;  // lowest argmax of A(i, j) + v_j
  bool agree;
  double difference;  // |hard_attention_i - (A (x) v)_i|
};

// Requires dim-1, all-finite values and no all-bottom row.
std::vector<RowAgreement> agreement_report(const TropicalMatrix& scores,
                                           const ValueVector& values);

// Header "beta,dist_hard,dist_trop,min_margin", then one line per record,
// shortest round-trip decimals throughout.
void write_sweep_csv(std::ostream& out, std::span<const ConvergenceRecord> records);

}  // namespace tropatt
