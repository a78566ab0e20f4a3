#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mapf/reservation_table.hpp"
#include "mapf/rng.hpp"
#include "mapf/space_time_astar.hpp"

namespace mapf {

struct RepairOutcome {
  bool success = false;
  std::vector<Path> new_paths;  // one per planned agent, in planning order
  std::int64_t expansions_used = 0;
  AgentId failed_agent = -1;
  PlanStatus failure_reason = PlanStatus::found;

  Cost cost() const;
};

// Uniform random permutation of `agents`, driven only by rng.
std::vector<AgentId> random_priority_order(std::span<const AgentId> agents, Rng& rng);

// Reservation table over every path of `solution` except those of `excluded`.
ReservationTable reserve_all_except(const Instance& instance, const Solution& solution,
                                    std::span<const AgentId> excluded);

// Prioritized planning: agents in `order` are planned one at a time, each
// against `table` plus the paths planned before it. A total node_budget is
// split evenly over the agents; without one, each agent gets
// default_node_budget. The first agent without a path fails the repair.
RepairOutcome pp_repair(const Instance& instance, ReservationTable table,
                        std::span<const AgentId> order,
                        std::optional<std::int64_t> node_budget = std::nullopt);

// Same, reserving `fixed_paths` first. fixed_paths is not modified.
RepairOutcome pp_repair(const Instance& instance, std::span<const Path> fixed_paths,
                        std::span<const AgentId> order,
                        std::optional<std::int64_t> node_budget = std::nullopt);

inline constexpr int kDefaultRestartLimit = 50;

// PP over all agents with a fresh random order per attempt; the first
// feasible result wins. nullopt after restart_limit failed attempts.
std::optional<Solution> initial_solution(const Instance& instance, Rng& rng,
                                         int restart_limit = kDefaultRestartLimit,
                                         std::optional<std::int64_t> node_budget = std::nullopt);

}  // namespace mapf
