#pragma once

#include <vector>

#include "mapf/instance.hpp"

namespace mapf {

// A timed sequence of vertices, states[t] being the location at timestep t.
// After its last state the agent stays parked at that vertex forever.
struct Path {
  AgentId agent_id = -1;
  std::vector<Vertex> states;

  Cost cost() const { return states.empty() ? 0 : static_cast<Cost>(states.size()) - 1; }
  Timestep end_time() const { return static_cast<Timestep>(states.size()) - 1; }
  Vertex at(Timestep t) const {
    return t < static_cast<Timestep>(states.size()) ? states[t] : states.back();
  }

  friend bool operator==(const Path&, const Path&) = default;
};

// One path per agent, paths()[i] belonging to agent i, with the sum of costs
// cached and kept coherent across path replacement.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<Path> paths);

  const std::vector<Path>& paths() const { return paths_; }
  const Path& path(AgentId id) const { return paths_[id]; }
  int num_agents() const { return static_cast<int>(paths_.size()); }

  Cost soc() const { return soc_; }

  // Replaces the path of p.agent_id.
  void replace_path(Path p);

  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::vector<Path> paths_;
  Cost soc_ = 0;
};

// Sum of costs recomputed from the paths (the cached value must agree).
Cost sum_of_costs(const Solution& solution);

// Sum over agents of c(p_i) - d_i. Throws std::logic_error if some path is
// shorter than its agent's shortest distance, which means the distances or
// the path are wrong.
Cost sum_of_delays(const Instance& instance, const Solution& solution);

// c(p_i) - d_i for every agent, same failure mode as sum_of_delays.
std::vector<Cost> agent_delays(const Instance& instance, const Solution& solution);

}  // namespace mapf
