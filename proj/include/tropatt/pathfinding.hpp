#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropatt/linalg.hpp"

namespace tropatt {

// Directed token graph stored as a dense score matrix.
//
// Edge direction convention (the single most error-prone detail in this
// library): weights(i, j) is the score of the edge j -> i, so that one
// relaxation step dist'_i = max_j(weights(i, j) + dist_j) moves information
// along the arrows. An edge u -> v with weight w therefore lives at entry
// (v, u), NOT at (u, v). Absent edges are bottom.
class TokenGraph {
 public:
  // Square weight matrix; labels are optional and, when given, must have one
  // entry per node.
  explicit TokenGraph(TropicalMatrix weights, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return weights_.rows(); }
  const TropicalMatrix& weights() const noexcept { return weights_; }
  // Empty when nodes are identified by index alone.
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  TropicalMatrix weights_;
  std::vector<std::string> labels_;
};

// Exhaustive enumeration refuses instances with more than this many
// sequences rather than silently subsampling.
inline constexpr std::size_t kEnumerationGuard = 1'000'000;

// dist'_i = max_j(weights(i, j) + dist_j): one relaxation of the fixed-length
// longest-path recurrence. Definitionally identical to trop_matvec against
// the graph's weight matrix.
ValueVector bellman_ford_step(const ValueVector& dist, const TokenGraph& graph);

// Every length-`hops` node sequence ending at `target`, with its cumulative
// weight; sequences of bottom weight are dropped. Output order is the
// lexicographic order of the index sequences. Requires dim-1 start values
// and size^hops <= kEnumerationGuard (use the relaxation ops beyond that).
std::vector<PathWitness> enumerate_paths(const TokenGraph& graph, const ValueVector& start,
                                         std::size_t hops, std::size_t target);

// Raises every diagonal entry to at least 0, so a route shorter than the hop
// budget can pad itself with free stays and still compete.
TokenGraph add_self_loops(const TokenGraph& graph);

// Deterministic Graphviz digraph: nodes in index order, one edge line per
// finite weight, optional highlighted walk in orange. Byte-identical across
// runs for identical inputs.
std::string export_dot(const TokenGraph& graph);
std::string export_dot(const TokenGraph& graph, const PathWitness& highlight);

// Built-in 4-node demo fixture (CLI name "fig2"): five scored edges into a
// small diamond, where the best 2-hop route into node 3 beats both the direct
// edge and the other detour.
TokenGraph fig2_graph();

}  // namespace tropatt
