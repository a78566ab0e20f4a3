// Benchmark driver: runs the LNS engines over the first k entries of a
// MovingAI scenario and writes one result row per run.

#include <boost/program_options.hpp>
#include <iostream>
#include <sstream>

#include "mapf/benchmark.hpp"
#include "mapf/movingai.hpp"

namespace po = boost::program_options;
using namespace mapf;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNoSolution = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) items.push_back(item);
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  BenchConfig config;
  std::string map_path, scen_path, agents, algos, out, convergence_dir;
  double time_budget = 60.0;
  std::uint64_t seed = 0;
  std::uint64_t iteration_cap = 0;
  std::int64_t node_budget = 0;

  po::options_description desc("Options");
  desc.add_options()
    ("help,h", "show this help")
    ("map", po::value<std::string>(&map_path)->required(), "MovingAI .map file")
    ("scen", po::value<std::string>(&scen_path)->required(), "MovingAI .scen file")
    ("agents", po::value<std::string>(&agents)->required(), "comma list of agent counts")
    ("algo", po::value<std::string>(&algos)->default_value("sequential"),
     "comma list from sequential,drop,sync,deta")
    ("time-budget", po::value<double>(&time_budget)->default_value(60.0), "seconds per run")
    ("neighborhood", po::value<int>(&config.params.neighborhood_size)->default_value(16),
     "neighborhood size N")
    ("gamma", po::value<double>(&config.params.gamma)->default_value(0.01), "reaction factor")
    ("threads", po::value<int>(&config.params.threads)->default_value(8), "worker threads m")
    ("seed", po::value<std::uint64_t>(&seed)->default_value(0), "seed of the first repetition")
    ("reps", po::value<int>(&config.repetitions)->default_value(1), "repetitions")
    ("iteration-cap", po::value<std::uint64_t>(&iteration_cap), "max destroy/repair tasks")
    ("node-budget", po::value<std::int64_t>(&node_budget), "A* expansions per repair")
    ("out", po::value<std::string>(&out), "results file (.json for JSON, CSV otherwise)")
    ("convergence-dir", po::value<std::string>(&convergence_dir), "per-run convergence CSVs")
    ("validate", po::bool_switch(&config.params.validate), "validate every accepted solution");

  po::variables_map vm;
  try {
    po::store(po::parse_command_line(argc, argv, desc), vm);
    if (vm.count("help")) {
      std::cout << "usage: mapf_lns --map FILE --scen FILE --agents K[,K...] [options]\n" << desc;
      return 0;
    }
    po::notify(vm);

    for (const std::string& k : split_list(agents)) {
      std::size_t used = 0;
      const int value = std::stoi(k, &used);
      if (used != k.size() || value < 1) throw std::invalid_argument("bad agent count '" + k + "'");
      config.agent_counts.push_back(value);
    }
    for (const std::string& name : split_list(algos)) {
      const auto algorithm = parse_algorithm(name);
      if (!algorithm) throw std::invalid_argument("unknown algorithm '" + name + "'");
      config.algorithms.push_back(*algorithm);
    }
    if (config.agent_counts.empty() || config.algorithms.empty())
      throw std::invalid_argument("--agents and --algo need at least one value");
    if (config.repetitions < 1) throw std::invalid_argument("--reps must be positive");

    config.map_path = map_path;
    config.scen_path = scen_path;
    config.output_path = out;
    config.convergence_dir = convergence_dir;
    config.format = config.output_path.extension() == ".json" ? ResultFormat::json : ResultFormat::csv;
    config.params.time_budget = time_budget;
    config.params.seed = seed;
    if (vm.count("iteration-cap")) config.params.iteration_cap = iteration_cap;
    if (vm.count("node-budget")) config.params.node_budget = node_budget;
    check_params(config.params);
  } catch (const std::exception& e) {
    std::cerr << "mapf_lns: " << e.what() << "\n";
    return kExitParse;
  }

  std::vector<ResultRow> rows;
  try {
    rows = run_benchmark(config, [](const ResultRow& row, const RunResult*) {
      std::cerr << to_string(row.algorithm) << " k=" << row.k << " seed=" << row.seed << ": "
                << row.termination;
      if (row.metrics)
        std::cerr << " soc " << row.metrics->initial_soc << " -> " << row.metrics->final_soc
                  << " npo " << row.metrics->npo_total;
      if (!row.detail.empty()) std::cerr << " (" << row.detail << ")";
      std::cerr << "\n";
    });
  } catch (const std::exception& e) {  // unreadable or malformed input files
    std::cerr << "mapf_lns: " << e.what() << "\n";
    return kExitParse;
  }

  if (config.output_path.empty()) std::cout << format_csv(rows);

  for (const ResultRow& row : rows)
    if (row.metrics) return 0;
  return kExitNoSolution;
}
