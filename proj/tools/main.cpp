#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tropatt/attention.hpp"
#include "tropatt/convergence.hpp"
#include "tropatt/errors.hpp"
#include "tropatt/format.hpp"
#include "tropatt/io.hpp"
#include "tropatt/linalg.hpp"
#include "tropatt/pathfinding.hpp"
#include "tropatt/tropical.hpp"

namespace {

using namespace tropatt;

// Empty path means stdout. All writers go through here so every output is
// written identically across runs.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << text;
  out.flush();
  if (!out) throw DomainError("cannot write output file: " + path);
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

// `path` accepts either the graph schema ("weights") or the plain matrix
// schema ("entries"); a matrix must then be square.
TokenGraph sniff_graph(const Json& doc) {
  if (doc.is_object() && doc.contains("weights")) return graph_from_json(doc);
  return TokenGraph(matrix_from_json(doc));
}

TropicalMatrix load_matrix(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

ValueVector load_vector(const std::string& path) {
  return vector_from_json(load_json_file(path));
}

struct ScoreArgs {
  std::string input;
  std::string output;
};

void run_score(const ScoreArgs& args) {
  const EmbeddingSet embeddings = embeddings_from_json(load_json_file(args.input));
  write_text(args.output, dump_json(matrix_to_json(score_matrix(embeddings))));
}

struct AttendArgs {
  std::string scores;
  std::string values;
  std::string output;
  double beta = 0.0;
  bool beta_given = false;
  bool hard = false;
  bool log_space = false;
};

void run_attend(const AttendArgs& args) {
  const TropicalMatrix scores = load_matrix(args.scores);
  const ValueVector values = load_vector(args.values);
  AttentionOutput out(1);
  if (args.hard) {
    out = hard_attention(scores, values);
  } else {
    if (!args.beta_given) throw CLI::RequiredError("--beta (without --hard)");
    if (args.log_space) {
      out = log_space_attention(scores, values, Beta(args.beta));
    } else {
      out = attention_forward(scores, values, Beta(args.beta));
    }
  }
  write_text(args.output, dump_json(vector_to_json(out)));
}

struct MatvecArgs {
  std::string scores;
  std::string values;
  std::string output;
};

void run_tropical(const MatvecArgs& args) {
  const ValueVector out = trop_matvec(load_matrix(args.scores), load_vector(args.values));
  write_text(args.output, dump_json(vector_to_json(out)));
}

struct PowerArgs {
  std::string matrix;
  std::string output;
  std::size_t layers = 1;
};

void run_power(const PowerArgs& args) {
  const TropicalMatrix out = trop_power(load_matrix(args.matrix), args.layers);
  write_text(args.output, dump_json(matrix_to_json(out)));
}

struct PathArgs {
  std::string graph;
  std::string start;
  std::string output;
  std::string dot_output;
  std::size_t hops = 1;
  std::size_t target = 0;
  bool allow_stay = false;
};

void run_path(const PathArgs& args) {
  TokenGraph graph = sniff_graph(load_json_file(args.graph));
  if (args.allow_stay) graph = add_self_loops(graph);
  const ValueVector start = load_vector(args.start);
  const PathWitness witness = reconstruct_path(graph.weights(), start, args.hops, args.target);
  write_text(args.output, dump_json(witness_to_json(witness)));
  if (!args.dot_output.empty()) write_text(args.dot_output, export_dot(graph, witness));
}

struct SweepArgs {
  std::string scores;
  std::string values;
  std::string output;
  double beta_min = 0.0;
  double beta_max = 0.0;
  int steps = 0;
  bool log_spaced = false;
};

std::vector<double> make_schedule(const SweepArgs& args) {
  if (!std::isfinite(args.beta_min) || args.beta_min <= 0.0) {
    throw DomainError("--beta-min must be positive and finite");
  }
  if (!std::isfinite(args.beta_max) || args.beta_max < args.beta_min) {
    throw DomainError("--beta-max must be finite and >= --beta-min");
  }
  const std::size_t steps = static_cast<std::size_t>(args.steps);
  if (steps == 1) {
    if (args.beta_max != args.beta_min) throw DomainError("--steps 1 requires --beta-max = --beta-min");
    return {args.beta_min};
  }
  if (args.beta_max == args.beta_min) {
    throw DomainError("an ascending schedule requires --beta-max > --beta-min");
  }
  std::vector<double> betas(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    if (args.log_spaced) {
      betas[i] = std::exp(std::log(args.beta_min) +
                          t * (std::log(args.beta_max) - std::log(args.beta_min)));
    } else {
      betas[i] = args.beta_min + t * (args.beta_max - args.beta_min);
    }
  }
  betas.front() = args.beta_min;
  betas.back() = args.beta_max;
  return betas;
}

void run_sweep(const SweepArgs& args) {
  const TropicalMatrix scores = load_matrix(args.scores);
  const ValueVector values = load_vector(args.values);
  const std::vector<double> betas = make_schedule(args);
  const std::vector<ConvergenceRecord> records = sweep(scores, values, betas);
  std::ostringstream out;
  write_sweep_csv(out, records);
  write_text(args.output, out.str());
}

struct MarginsArgs {
  std::string scores;
  std::string output;
  double epsilon_tie = kDefaultEpsilonTie;
  bool epsilon_given = false;
};

void run_margins(const MarginsArgs& args) {
  double epsilon = args.epsilon_tie;
  if (!args.epsilon_given) {
    if (const char* env = std::getenv("TROPATT_EPSILON_TIE")) {
      const auto parsed = parse_double(env);
      if (!parsed) throw SchemaError(std::string("TROPATT_EPSILON_TIE is not a number: ") + env);
      epsilon = *parsed;
    }
  }
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw DomainError("epsilon_tie must be finite and nonnegative");
  }
  const TropicalMatrix scores = load_matrix(args.scores);
  Json out = Json::array();
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const MarginReport report = row_margin(scores, i);
    out.push_back(margin_to_json(report, report.margin <= epsilon));
  }
  write_text(args.output, dump_json(out));
}

void run_check(const MatvecArgs& args) {
  const TropicalMatrix scores = load_matrix(args.scores);
  const ValueVector values = load_vector(args.values);
  Json out = Json::array();
  for (const RowAgreement& row : agreement_report(scores, values)) {
    out.push_back(agreement_to_json(row));
  }
  write_text(args.output, dump_json(out));
}

struct DemoArgs {
  std::string fixture;
  std::string output;
};

// Narrates the built-in fixture: every two-hop route into the target (stays
// allowed, so the direct edge competes), then the reconstructed winner.
void run_demo(const DemoArgs& args) {
  const TokenGraph graph = add_self_loops(fig2_graph());
  const std::size_t target = 3;
  const std::size_t hops = 2;
  ValueVector start(graph.size());
  start(0) = TropicalScalar(0.0);

  std::map<std::string, TropicalScalar> best;
  for (const PathWitness& path : enumerate_paths(graph, start, hops, target)) {
    const std::size_t mid = path.nodes[1];
    const bool stay = (mid == path.nodes[0] || mid == target);
    const std::string label = stay ? "direct" : "via " + std::to_string(mid);
    TropicalScalar& slot = best[label];
    slot = trop_add(slot, path.total_weight);
  }
  std::vector<std::pair<std::string, TropicalScalar>> routes(best.begin(), best.end());
  std::sort(routes.begin(), routes.end(), [](const auto& a, const auto& b) {
    if (a.second.value() != b.second.value()) return a.second.value() < b.second.value();
    return a.first < b.first;
  });

  std::ostringstream out;
  out << "fixture " << args.fixture << ": " << graph.size() << " tokens, target node " << target
      << ", " << hops << " hops\n";
  for (const auto& [label, weight] : routes) out << label << ": " << to_string(weight) << "\n";

  const PathWitness winner = reconstruct_path(graph.weights(), start, hops, target);
  out << "winner: ";
  for (std::size_t k = 0; k < winner.nodes.size(); ++k) {
    if (k > 0) out << " -> ";
    out << winner.nodes[k];
  }
  out << " (weight " << to_string(winner.total_weight) << ")\n";
  write_text(args.output, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-plus linear algebra, softmax attention, and path finding", "tropatt"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "inner-product score matrix from embeddings");
  score_cmd->add_option("embeddings", score_args.input, "embedding JSON file")->required();
  score_cmd->add_option("-o,--output", score_args.output, "output file (default stdout)");
  score_cmd->callback([&] { run_score(score_args); });

  AttendArgs attend_args;
  auto* attend_cmd = app.add_subcommand("attend", "softmax attention over a score matrix");
  attend_cmd->add_option("scores", attend_args.scores, "score matrix JSON file")->required();
  attend_cmd->add_option("values", attend_args.values, "value vector JSON file")->required();
  auto* beta_opt = attend_cmd->add_option("-b,--beta", attend_args.beta, "inverse temperature");
  auto* hard_flag = attend_cmd->add_flag("--hard", attend_args.hard, "sharp limit: argmax gather, ties averaged");
  auto* log_flag =
      attend_cmd->add_flag("--log-space", attend_args.log_space, "log-space attention (smoothed max-plus product)");
  hard_flag->excludes(log_flag);
  hard_flag->excludes(beta_opt);
  attend_cmd->add_option("-o,--output", attend_args.output, "output file (default stdout)");
  attend_cmd->callback([&] {
    attend_args.beta_given = beta_opt->count() > 0;
    run_attend(attend_args);
  });

  MatvecArgs tropical_args;
  auto* tropical_cmd = app.add_subcommand("tropical", "max-plus matrix-vector product");
  tropical_cmd->add_option("scores", tropical_args.scores, "matrix JSON file")->required();
  tropical_cmd->add_option("values", tropical_args.values, "value vector JSON file")->required();
  tropical_cmd->add_option("-o,--output", tropical_args.output, "output file (default stdout)");
  tropical_cmd->callback([&] { run_tropical(tropical_args); });

  PowerArgs power_args;
  auto* power_cmd = app.add_subcommand("power", "max-plus matrix power");
  power_cmd->add_option("matrix", power_args.matrix, "square matrix JSON file")->required();
  power_cmd->add_option("-L,--layers", power_args.layers, "number of factors")
      ->required()
      ->check(CLI::PositiveNumber);
  power_cmd->add_option("-o,--output", power_args.output, "output file (default stdout)");
  power_cmd->callback([&] { run_power(power_args); });

  PathArgs path_args;
  auto* path_cmd = app.add_subcommand("path", "optimal fixed-length path into a target node");
  path_cmd->add_option("graph", path_args.graph, "graph or square matrix JSON file")->required();
  path_cmd->add_option("start", path_args.start, "start value vector JSON file")->required();
  path_cmd->add_option("-L,--hops", path_args.hops, "path length in edges")
      ->required()
      ->check(CLI::PositiveNumber);
  path_cmd->add_option("-t,--target", path_args.target, "target node index")->required();
  path_cmd->add_flag("--allow-stay", path_args.allow_stay, "add zero-weight self loops first");
  path_cmd->add_option("--dot", path_args.dot_output, "also write DOT with the winner highlighted");
  path_cmd->add_option("-o,--output", path_args.output, "output file (default stdout)");
  path_cmd->callback([&] { run_path(path_args); });

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "convergence distances across a beta schedule");
  sweep_cmd->add_option("scores", sweep_args.scores, "score matrix JSON file")->required();
  sweep_cmd->add_option("values", sweep_args.values, "value vector JSON file")->required();
  sweep_cmd->add_option("--beta-min", sweep_args.beta_min, "first beta")->required();
  sweep_cmd->add_option("--beta-max", sweep_args.beta_max, "last beta")->required();
  sweep_cmd->add_option("--steps", sweep_args.steps, "schedule length")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--log-spaced", sweep_args.log_spaced, "geometric spacing instead of linear");
  sweep_cmd->add_option("-o,--output", sweep_args.output, "output CSV file (default stdout)");
  sweep_cmd->callback([&] { run_sweep(sweep_args); });

  MarginsArgs margins_args;
  auto* margins_cmd = app.add_subcommand("margins", "per-row winner margins of a score matrix");
  margins_cmd->add_option("scores", margins_args.scores, "score matrix JSON file")->required();
  auto* eps_opt = margins_cmd->add_option("--epsilon-tie", margins_args.epsilon_tie,
                                          "tie tolerance (env TROPATT_EPSILON_TIE, default 1e-9)");
  margins_cmd->add_option("-o,--output", margins_args.output, "output file (default stdout)");
  margins_cmd->callback([&] {
    margins_args.epsilon_given = eps_opt->count() > 0;
    run_margins(margins_args);
  });

  MatvecArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "compare the two sharp limits row by row");
  check_cmd->add_option("scores", check_args.scores, "score matrix JSON file")->required();
  check_cmd->add_option("values", check_args.values, "value vector JSON file")->required();
  check_cmd->add_option("-o,--output", check_args.output, "output file (default stdout)");
  check_cmd->callback([&] { run_check(check_args); });

  DemoArgs demo_args;
  auto* demo_cmd = app.add_subcommand("demo", "narrated built-in fixture");
  demo_cmd->add_option("fixture", demo_args.fixture, "fixture name")
      ->required()
      ->check(CLI::IsMember({"fig2"}));
  demo_cmd->add_option("-o,--output", demo_args.output, "output file (default stdout)");
  demo_cmd->callback([&] { run_demo(demo_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
