#include "resclust/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "resclust/io.hpp"
#include "resclust/report.hpp"
#include "resclust/resilience.hpp"
#include "resclust/tree_dp.hpp"

namespace resclust::cli {

namespace {

struct ValidationFailure : std::runtime_error {
  explicit ValidationFailure(ValidationReport r) : std::runtime_error("input is not a metric"), report(std::move(r)) {}
  ValidationReport report;
};

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["input"] = c.input;
  j["input_kind"] = c.input_kind;
  j["norm"] = c.norm;
  j["objective"] = c.objective;
  j["facility_costs"] = c.facility_costs;
  j["k"] = c.k;
  j["alpha"] = c.alpha;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["eps"] = c.eps;
  j["shrink_fraction"] = c.shrink_fraction;
  j["root"] = c.root;
  j["mst_out"] = c.mst_out;
  j["n"] = c.n;
  j["margin"] = c.margin;
  j["spread"] = c.spread;
  j["dim"] = c.dim;
  j["matrix_out"] = c.matrix_out;
  j["points_out"] = c.points_out;
  j["output"] = c.output;
  return j;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

Norm parse_norm(const std::string& s) {
  if (s == "euclidean") return Norm::kEuclidean;
  if (s == "manhattan") return Norm::kManhattan;
  throw std::invalid_argument("unknown norm: " + s);
}

SquareMatrix load_matrix(const RunConfig& c) {
  require(!c.input.empty(), c.command + ": --input is required");
  if (c.input_kind == "points") return from_points(read_points_csv(c.input), parse_norm(c.norm)).matrix();
  require(c.input_kind == "matrix", "unknown --input-kind: " + c.input_kind);
  return read_matrix_csv(c.input);
}

MetricSpace load_metric(const RunConfig& c) {
  SquareMatrix d = load_matrix(c);
  if (c.input_kind == "points") return make_unchecked_metric(std::move(d));
  ValidationReport report = validate_metric(d, c.eps);
  if (!report.ok) throw ValidationFailure(std::move(report));
  return make_unchecked_metric(std::move(d));
}

Objective load_objective(const RunConfig& c, std::size_t n) {
  if (c.objective == "facility_location") {
    require(!c.facility_costs.empty(), "facility_location requires --facility-costs");
    const auto costs = read_costs_csv(c.facility_costs);
    require(costs.size() == n, "facility costs file has " + std::to_string(costs.size()) + " rows, expected " +
                                   std::to_string(n));
    return facility_location(costs);
  }
  return builtin_objective(c.objective);
}

void require_k(const RunConfig& c, std::size_t n) {
  require(c.k >= 1, c.command + ": --k must be >= 1");
  require(c.k <= n, c.command + ": k = " + std::to_string(c.k) + " exceeds n = " + std::to_string(n));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

Json cmd_cluster(const RunConfig& c) {
  const MetricSpace m = load_metric(c);
  const Objective obj = load_objective(c, m.size());
  require_k(c, m.size());
  require(c.root < m.size(), "cluster: --root out of range");
  const SpanningTree tree = kruskal(m);
  if (!c.mst_out.empty()) {
    auto out = open_output(c.mst_out);
    write_edges_csv(out, tree.edges);
  }
  const Clustering result = dp_cluster(root_and_binarize(tree, c.root), m, obj, c.k);
  const ClusteringCost check = clustering_cost(result.assignment, m, obj);
  if (!near_relative(check.cost, result.cost, 1e-9)) {
    throw std::logic_error("cluster: emitted cost fails re-validation");
  }
  Json j;
  j["assignments"] = one_based(result.assignment);
  j["centers"] = result.centers;
  j["cost"] = result.cost;
  j["objective"] = obj.name;
  j["k"] = c.k;
  return j;
}

Json cmd_oracle(const RunConfig& c) {
  const MetricSpace m = load_metric(c);
  const Objective obj = load_objective(c, m.size());
  require_k(c, m.size());
  const OracleResult r = brute_force_optimal(m, obj, c.k);
  Json j = to_json(r);
  j["centers"] = clustering_cost(r.best(), m, obj).centers;
  j["objective"] = obj.name;
  j["k"] = c.k;
  return j;
}

Json cmd_probe(const RunConfig& c) {
  const MetricSpace m = load_metric(c);
  const Objective obj = load_objective(c, m.size());
  require_k(c, m.size());
  require(c.alpha >= 1.0, "probe: --alpha must be >= 1");
  require(c.trials >= 1, "probe: --trials must be >= 1");
  Json j = to_json(probe_resilience(m, obj, c.k, c.alpha, c.trials, c.seed, c.shrink_fraction));
  j["objective"] = obj.name;
  j["k"] = c.k;
  return j;
}

Json cmd_generate(const RunConfig& c) {
  require(!c.matrix_out.empty(), "generate: --matrix-out is required");
  const GeneratedInstance inst = generate_resilient_instance({c.n, c.k, c.margin, c.spread, c.seed, c.dim});
  {
    auto out = open_output(c.matrix_out);
    write_matrix_csv(out, inst.metric.matrix());
  }
  if (!c.points_out.empty()) {
    auto out = open_output(c.points_out);
    write_points_csv(out, inst.points);
  }
  Json j;
  j["n"] = c.n;
  j["k"] = c.k;
  j["planted"] = one_based(inst.planted);
  j["matrix_file"] = c.matrix_out;
  j["points_file"] = c.points_out;
  return j;
}

Json cmd_baseline(const RunConfig& c) {
  const MetricSpace m = load_metric(c);
  require_k(c, m.size());
  Json j;
  j["k"] = c.k;
  j["assignments"] = one_based(single_linkage_baseline(m, c.k));
  return j;
}

}  // namespace

ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json doc;
  doc["config"] = config_json(config);
  ExitCode code = ExitCode::kOk;
  try {
    Json body;
    if (config.command == "cluster") {
      body = cmd_cluster(config);
    } else if (config.command == "oracle") {
      body = cmd_oracle(config);
    } else if (config.command == "probe") {
      body = cmd_probe(config);
    } else if (config.command == "generate") {
      body = cmd_generate(config);
    } else if (config.command == "validate") {
      const ValidationReport report = validate_metric(load_matrix(config), config.eps);
      body = to_json(report);
      if (!report.ok) code = ExitCode::kValidationFailed;
    } else if (config.command == "baseline") {
      body = cmd_baseline(config);
    } else {
      throw std::invalid_argument("unknown command: " + config.command);
    }
    for (auto& [key, value] : body.items()) doc[key] = value;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << '\n';
    doc["error"] = e.what();
    doc["validation"] = to_json(e.report);
    code = ExitCode::kValidationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::kError;
  }

  try {
    if (config.output.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      auto file = open_output(config.output);
      file << doc.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::kError;
  }
  return code;
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact clustering of perturbation-resilient instances"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Points CSV or distance-matrix CSV");
    sub->add_option("--input-kind", cfg.input_kind, "matrix | points")->capture_default_str();
    sub->add_option("--norm", cfg.norm, "euclidean | manhattan (points input)")->capture_default_str();
    sub->add_option("--eps", cfg.eps, "Triangle-inequality tolerance")->capture_default_str();
    sub->add_option("--output", cfg.output, "Write JSON here instead of stdout");
  };
  auto add_objective = [&cfg](CLI::App* sub) {
    sub->add_option("--objective", cfg.objective, "kmedian | kmeans | kcenter | facility_location")
        ->capture_default_str();
    sub->add_option("--facility-costs", cfg.facility_costs, "Opening costs CSV, one per point");
    sub->add_option("--k", cfg.k, "Number of clusters");
  };

  auto* cluster = app.add_subcommand("cluster", "Solve with the MST dynamic program");
  add_input(cluster);
  add_objective(cluster);
  cluster->add_option("--root", cfg.root, "Root point of the spanning tree")->capture_default_str();
  cluster->add_option("--mst-out", cfg.mst_out, "Dump MST edges as CSV i,j,weight");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum (small n)");
  add_input(oracle);
  add_objective(oracle);

  auto* probe = app.add_subcommand("probe", "Probe stability under random metric perturbations");
  add_input(probe);
  add_objective(probe);
  probe->add_option("--alpha", cfg.alpha, "Perturbation factor")->capture_default_str();
  probe->add_option("--trials", cfg.trials, "Number of perturbations")->capture_default_str();
  probe->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  probe->add_option("--shrink-fraction", cfg.shrink_fraction, "Fraction of pairs shrunk per trial")
      ->capture_default_str();

  auto* generate = app.add_subcommand("generate", "Generate a well-separated planted instance");
  generate->add_option("--n", cfg.n, "Number of points")->required();
  generate->add_option("--k", cfg.k, "Number of clusters")->required();
  generate->add_option("--margin", cfg.margin, "Separation margin (> 2)")->capture_default_str();
  generate->add_option("--spread", cfg.spread, "Cluster radius")->capture_default_str();
  generate->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  generate->add_option("--dim", cfg.dim, "Dimension")->capture_default_str();
  generate->add_option("--matrix-out", cfg.matrix_out, "Distance matrix CSV path")->required();
  generate->add_option("--points-out", cfg.points_out, "Points CSV path");
  generate->add_option("--output", cfg.output, "Write JSON here instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check metric axioms");
  add_input(validate);

  auto* baseline = app.add_subcommand("baseline", "Single-linkage clustering");
  add_input(baseline);
  baseline->add_option("--k", cfg.k, "Number of clusters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kError);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return static_cast<int>(run(cfg, out, err));
}

}  // namespace resclust::cli
