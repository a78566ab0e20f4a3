#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapf/engine.hpp"
#include "mapf/metrics.hpp"

namespace mapf {

enum class ResultFormat { csv, json };

struct BenchConfig {
  std::filesystem::path map_path;
  std::filesystem::path scen_path;
  std::vector<int> agent_counts;
  std::vector<Algorithm> algorithms;
  RunParams params;      // params.seed is the seed of repetition 0
  int repetitions = 1;   // repetition r runs with seed params.seed + r
  std::filesystem::path output_path;       // empty: no results file
  ResultFormat format = ResultFormat::csv;
  std::filesystem::path convergence_dir;   // empty: no convergence files
};

struct ResultRow {
  std::string map;
  std::string scen;
  Algorithm algorithm = Algorithm::sequential;
  int k = 0;
  int m = 0;
  int N = 0;
  double gamma = 0.0;
  double T = 0.0;
  std::uint64_t seed = 0;
  // "budget", "iteration_cap", "no-initial-solution", or "error" / "infeasible"
  // when the run threw or returned an invalid final solution.
  std::string termination;
  std::optional<MetricsSummary> metrics;  // absent unless the run produced a valid solution
  std::string detail;                     // error text for failed runs
};

// Throws ParseError / std::runtime_error when the input files cannot be
// read; every per-run failure is recorded in its row instead.
std::vector<ResultRow> run_benchmark(
    const BenchConfig& config,
    const std::function<void(const ResultRow&, const RunResult*)>& on_row = {});

inline const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns{
      "map", "scen", "algorithm", "k", "m", "N", "gamma", "T", "seed", "initial_soc",
      "final_soc", "suboptimality", "auc", "npo_total", "dp", "exp", "termination"};
  return columns;
}

std::string format_csv(std::span<const ResultRow> rows);
std::string format_json(std::span<const ResultRow> rows);

// Throws std::runtime_error naming the path on I/O failure.
void emit_results(std::span<const ResultRow> rows, ResultFormat format,
                  const std::filesystem::path& path);

// One `time,soc,sum_of_delays` line per improvement event, after a header.
std::string format_convergence(const RunEventLog& log);
void emit_convergence(const RunEventLog& log, const std::filesystem::path& path);

}  // namespace mapf
