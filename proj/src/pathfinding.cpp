#include "tropatt/pathfinding.hpp"

#include <set>
#include <sstream>
#include <utility>

#include "tropatt/errors.hpp"
#include "tropatt/format.hpp"

namespace tropatt {

namespace {

std::string quote_label(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_dot(const TokenGraph& graph, const PathWitness* highlight) {
  const std::size_t n = graph.size();
  std::set<std::pair<std::size_t, std::size_t>> marked;
  if (highlight != nullptr) {
    for (std::size_t k = 0; k < highlight->nodes.size(); ++k) {
      if (highlight->nodes[k] >= n) throw DomainError("highlight path references node out of range");
      if (k + 1 < highlight->nodes.size()) {
        marked.emplace(highlight->nodes[k], highlight->nodes[k + 1]);
      }
    }
  }

  std::ostringstream out;
  out << "digraph tokens {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label =
        graph.labels().empty() ? std::to_string(i) : graph.labels()[i];
    out << "  " << i << " [label=" << quote_label(label) << "];\n";
  }
  // Source-major edge order; entry (v, u) is the edge u -> v.
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const TropicalScalar w = graph.weights()(v, u);
      if (w.is_bottom()) continue;
      out << "  " << u << " -> " << v << " [label=\"" << format_double(w.value()) << '"';
      if (marked.count({u, v}) != 0) out << ", color=\"orange\"";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

TokenGraph::TokenGraph(TropicalMatrix weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  if (!weights_.square()) throw DomainError("graph weight matrix must be square");
  if (!labels_.empty() && labels_.size() != weights_.rows()) {
    throw DomainError("graph labels must match node count");
  }
}

ValueVector bellman_ford_step(const ValueVector& dist, const TokenGraph& graph) {
  return trop_matvec(graph.weights(), dist);
}

std::vector<PathWitness> enumerate_paths(const TokenGraph& graph, const ValueVector& start,
                                         std::size_t hops, std::size_t target) {
  const std::size_t n = graph.size();
  if (start.dim() != 1) throw DomainError("path enumeration requires scalar start values");
  if (start.len() != n) throw DomainError("start value length must match node count");
  if (target >= n) throw DomainError("target node out of range");
  if (hops == 0) throw DomainError("hop count must be positive");

  std::size_t count = 1;
  for (std::size_t l = 0; l < hops; ++l) {
    if (count > kEnumerationGuard / n) {
      throw DomainError("enumeration guard exceeded; use the relaxation operations instead");
    }
    count *= n;
  }

  std::vector<PathWitness> out;
  std::vector<std::size_t> nodes(hops + 1, 0);
  nodes[hops] = target;
  // Odometer over (j_0, ..., j_{hops-1}); the last free slot spins fastest,
  // which yields lexicographic order of the full sequences.
  while (true) {
    TropicalScalar weight = start(nodes[0]);
    for (std::size_t k = 0; k + 1 <= hops; ++k) {
      weight = trop_mul(weight, graph.weights()(nodes[k + 1], nodes[k]));
    }
    if (weight.is_finite()) out.push_back(PathWitness{nodes, weight});

    std::size_t pos = hops;
    while (pos > 0 && nodes[pos - 1] == n - 1) {
      nodes[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++nodes[pos - 1];
  }
  return out;
}

TokenGraph add_self_loops(const TokenGraph& graph) {
  TropicalMatrix weights = graph.weights();
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    weights(i, i) = trop_add(weights(i, i), TropicalScalar(0.0));
  }
  return TokenGraph(std::move(weights), graph.labels());
}

std::string export_dot(const TokenGraph& graph) { return render_dot(graph, nullptr); }

std::string export_dot(const TokenGraph& graph, const PathWitness& highlight) {
  return render_dot(graph, &highlight);
}

TokenGraph fig2_graph() {
  TropicalMatrix weights(4, 4);
  weights(1, 0) = TropicalScalar(4.0);
  weights(2, 0) = TropicalScalar(6.0);
  weights(3, 0) = TropicalScalar(5.0);
  weights(3, 1) = TropicalScalar(4.0);
  weights(3, 2) = TropicalScalar(1.0);
  return TokenGraph(std::move(weights));
}

}  // namespace tropatt
