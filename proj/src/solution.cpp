#include "mapf/solution.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace mapf {

Solution::Solution(std::vector<Path> paths) : paths_(std::move(paths)) {
  soc_ = sum_of_costs(*this);
}

void Solution::replace_path(Path p) {
  Path& slot = paths_.at(p.agent_id);
  soc_ += p.cost() - slot.cost();
  slot = std::move(p);
}

Cost sum_of_costs(const Solution& solution) {
  return std::accumulate(solution.paths().begin(), solution.paths().end(), Cost{0},
                         [](Cost acc, const Path& p) { return acc + p.cost(); });
}

std::vector<Cost> agent_delays(const Instance& instance, const Solution& solution) {
  if (solution.num_agents() != instance.num_agents())
    throw std::logic_error("solution does not cover every agent");
  std::vector<Cost> delays(instance.num_agents());
  for (const Agent& a : instance.agents()) {
    const Cost delay = solution.path(a.id).cost() - a.shortest_dist;
    if (delay < 0)
      throw std::logic_error("agent " + std::to_string(a.id) +
                             " has a path shorter than its shortest distance");
    delays[a.id] = delay;
  }
  return delays;
}

Cost sum_of_delays(const Instance& instance, const Solution& solution) {
  const auto delays = agent_delays(instance, solution);
  return std::accumulate(delays.begin(), delays.end(), Cost{0});
}

}  // namespace mapf
