#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mapf/distance_field.hpp"
#include "mapf/grid_map.hpp"

namespace mapf {

struct Agent {
  AgentId id = 0;
  Vertex start = kNoVertex;
  Vertex goal = kNoVertex;
  int shortest_dist = 0;  // d_i, unconstrained graph distance start -> goal
};

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A MAPF problem: one shared map plus k agents with distinct starts and
// distinct goals. Immutable and safe to share across threads.
class Instance {
 public:
  // Throws InstanceError if there are no agents, an endpoint is blocked,
  // starts or goals repeat, or a goal is unreachable from its start.
  Instance(std::shared_ptr<const GridMap> map,
           const std::vector<std::pair<Vertex, Vertex>>& start_goal_pairs);

  const GridMap& map() const { return *map_; }
  const std::shared_ptr<const GridMap>& shared_map() const { return map_; }

  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(AgentId id) const { return agents_[id]; }

  // Distance field towards agent id's goal.
  const DistanceField& heuristic(AgentId id) const { return heuristics_[id]; }

  // Sum of d_i over all agents; lower bound on the optimal sum of costs.
  Cost sum_of_distances() const { return sum_of_distances_; }

 private:
  std::shared_ptr<const GridMap> map_;
  std::vector<Agent> agents_;
  std::vector<DistanceField> heuristics_;
  Cost sum_of_distances_ = 0;
};

}  // namespace mapf
