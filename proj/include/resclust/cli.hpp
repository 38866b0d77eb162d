#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace resclust::cli {

enum class ExitCode : int { kOk = 0, kError = 1, kValidationFailed = 2 };

/// Resolved command-line configuration. Every field is echoed into the
/// JSON output under "config".
struct RunConfig {
  std::string command;  // cluster | oracle | probe | generate | validate | baseline
  std::string input;
  std::string input_kind = "matrix";  // matrix | points
  std::string norm = "euclidean";     // euclidean | manhattan (points input)
  std::string objective = "kmedian";
  std::string facility_costs;
  std::size_t k = 0;
  double alpha = 2.0;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double eps = 1e-9;
  double shrink_fraction = 1.0;
  std::size_t root = 0;
  std::string mst_out;
  // generate
  std::size_t n = 0;
  double margin = 4.0;
  double spread = 1.0;
  std::size_t dim = 1;
  std::string matrix_out;
  std::string points_out;
  std::string output;  // empty: stdout
};

/// Executes one command and writes its JSON result to `out` (or to
/// config.output). Diagnostics go to `err`.
ExitCode run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace resclust::cli
