#include "mapf/repair.hpp"

#include <algorithm>
#include <numeric>

namespace mapf {

Cost RepairOutcome::cost() const {
  Cost total = 0;
  for (const Path& p : new_paths) total += p.cost();
  return total;
}

std::vector<AgentId> random_priority_order(std::span<const AgentId> agents, Rng& rng) {
  std::vector<AgentId> order(agents.begin(), agents.end());
  // Explicit Fisher-Yates so the permutation depends only on the engine.
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  return order;
}

ReservationTable reserve_all_except(const Instance& instance, const Solution& solution,
                                    std::span<const AgentId> excluded) {
  std::vector<bool> skip(instance.num_agents(), false);
  for (AgentId a : excluded) skip[a] = true;
  ReservationTable table(instance.map());
  for (const Path& p : solution.paths())
    if (!skip[p.agent_id]) table.add(p);
  return table;
}

RepairOutcome pp_repair(const Instance& instance, ReservationTable table,
                        std::span<const AgentId> order, std::optional<std::int64_t> node_budget) {
  RepairOutcome outcome;
  outcome.new_paths.reserve(order.size());
  const std::int64_t share =
      node_budget ? std::max<std::int64_t>(1, *node_budget / std::max<std::size_t>(1, order.size()))
                  : 0;
  for (AgentId id : order) {
    const Agent& agent = instance.agent(id);
    const DistanceField& h = instance.heuristic(id);
    const std::int64_t budget =
        node_budget ? share : default_node_budget(instance.map(), h, agent.start);
    PlanResult plan =
        plan_constrained_path(instance.map(), id, agent.start, agent.goal, h, table, budget);
    outcome.expansions_used += plan.expansions;
    if (!plan.found()) {
      outcome.failed_agent = id;
      outcome.failure_reason = plan.status;
      outcome.new_paths.clear();
      return outcome;
    }
    table.add(plan.path);
    outcome.new_paths.push_back(std::move(plan.path));
  }
  outcome.success = true;
  return outcome;
}

RepairOutcome pp_repair(const Instance& instance, std::span<const Path> fixed_paths,
                        std::span<const AgentId> order, std::optional<std::int64_t> node_budget) {
  return pp_repair(instance, build_reservation(instance.map(), fixed_paths), order, node_budget);
}

std::optional<Solution> initial_solution(const Instance& instance, Rng& rng, int restart_limit,
                                         std::optional<std::int64_t> node_budget) {
  std::vector<AgentId> all(instance.num_agents());
  std::iota(all.begin(), all.end(), 0);
  for (int attempt = 0; attempt < restart_limit; ++attempt) {
    const auto order = random_priority_order(all, rng);
    RepairOutcome outcome =
        pp_repair(instance, ReservationTable(instance.map()), order, node_budget);
    if (!outcome.success) continue;
    std::vector<Path> paths(instance.num_agents());
    for (Path& p : outcome.new_paths) paths[p.agent_id] = std::move(p);
    return Solution(std::move(paths));
  }
  return std::nullopt;
}

}  // namespace mapf
