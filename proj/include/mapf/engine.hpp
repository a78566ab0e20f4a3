#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "mapf/destroy.hpp"
#include "mapf/event_log.hpp"
#include "mapf/repair.hpp"

namespace mapf {

enum class Algorithm { sequential, drop, sync, deta };
enum class Termination { budget, iteration_cap, no_initial_solution };

std::string_view to_string(Algorithm a);
std::string_view to_string(Termination t);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct RunParams {
  double time_budget = 60.0;  // T, seconds; covers initial-solution construction
  int neighborhood_size = 16; // N
  double gamma = 0.01;
  int threads = 8;            // m; ignored by the sequential engine
  std::uint64_t seed = 0;     // master seed; the initial solution is drawn from it
  // Seed of the per-task streams, hash(seed, task_serial). Defaults to seed.
  std::optional<std::uint64_t> iteration_seed;
  // Total A* expansions per repair, split evenly over the neighbourhood.
  // Unset: default_node_budget per agent.
  std::optional<std::int64_t> node_budget;
  int queue_capacity = 0;  // DROP task queue; 0 means 2 * threads
  // Maximum number of destroy/repair tasks (per replica for DETA).
  std::optional<std::uint64_t> iteration_cap;
  int restart_limit = kDefaultRestartLimit;
  bool validate = false;  // validate every install (always on in debug builds)
  // DETA per-replica task-stream seeds; derived from seed when empty.
  std::vector<std::uint64_t> replica_seeds;
};

// Throws std::invalid_argument unless T > 0, N >= 1, m >= 1 and the queue
// capacity (when set) is at least m.
void check_params(const RunParams& params);

// Result of one destroy/repair pair on a private snapshot.
struct TaskReport {
  bool success = false;  // repaired and strictly cheaper
  DestroyHeuristic heuristic = DestroyHeuristic::random;
  Solution solution;               // snapshot with the neighbourhood replaced; set on success
  Cost improvement = 0;            // c(P') - c(P'_new) on success
  std::optional<Cost> repaired_soc;  // soc after a complete repair, improving or not
  std::size_t neighborhood_size = 0;
  std::int64_t expansions = 0;
};

using TaskFunction =
    std::function<TaskReport(const Solution& snapshot, const HeuristicWeights& weights, Rng& rng,
                             TabuState& tabu)>;

// Selects H' from the weight snapshot, destroys a neighbourhood with it,
// replans it by PP in a random priority order and reports success only for a
// strict cost decrease.
TaskReport destroy_and_repair_task(const Instance& instance, const RunParams& params,
                                   const Solution& snapshot, const HeuristicWeights& weights,
                                   Rng& rng, TabuState& tabu);

// Test and instrumentation seams.
struct RunHooks {
  std::optional<Solution> initial;  // skip initial-solution construction
  TaskFunction task;                // replaces destroy_and_repair_task
  // Called (serialized) for every installed best-known solution, initial included.
  std::function<void(const Solution&, const ImprovementEvent&)> on_install;
};

struct RunResult {
  Solution final_solution;
  RunEventLog event_log;
  Cost initial_soc = 0;
  Termination termination = Termination::budget;
  HeuristicWeights final_weights;  // DETA: the winning replica's

  bool solved() const { return termination != Termination::no_initial_solution; }
};

// MAPF-LNS: one destroy/repair pair per iteration, accepting strict
// improvements.
RunResult run_sequential_lns(const Instance& instance, const RunParams& params,
                             const RunHooks& hooks = {});

// Main thread keeps a bounded task queue full; m workers snapshot the best
// solution and weights under the main lock, run a task unlocked, then update
// the weights and install strictly better solutions under the main lock.
RunResult run_drop_lns(const Instance& instance, const RunParams& params,
                       const RunHooks& hooks = {});

// Barrier-synchronized rounds: m tasks on one snapshot, the cheapest result
// decides the single weight update and the install.
RunResult run_sync_lns(const Instance& instance, const RunParams& params,
                       const RunHooks& hooks = {});

// m independent MAPF-LNS replicas from one shared initial solution; the
// cheapest final solution wins.
RunResult run_deta_lns(const Instance& instance, const RunParams& params,
                       const RunHooks& hooks = {});

RunResult run_engine(Algorithm algorithm, const Instance& instance, const RunParams& params,
                     const RunHooks& hooks = {});

// Seed of replica r's task streams in DETA.
std::uint64_t replica_seed(const RunParams& params, int replica);

}  // namespace mapf
