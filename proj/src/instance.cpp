#include "mapf/instance.hpp"

#include <string>
#include <unordered_set>

namespace mapf {

Instance::Instance(std::shared_ptr<const GridMap> map,
                   const std::vector<std::pair<Vertex, Vertex>>& start_goal_pairs)
    : map_(std::move(map)) {
  if (!map_) throw InstanceError("instance requires a map");
  if (start_goal_pairs.empty()) throw InstanceError("instance requires at least one agent");

  std::unordered_set<Vertex> starts, goals;
  agents_.reserve(start_goal_pairs.size());
  heuristics_.reserve(start_goal_pairs.size());
  for (const auto& [start, goal] : start_goal_pairs) {
    const auto id = static_cast<AgentId>(agents_.size());
    const std::string tag = "agent " + std::to_string(id);
    if (!map_->is_passable(start)) throw InstanceError(tag + ": start is not passable");
    if (!map_->is_passable(goal)) throw InstanceError(tag + ": goal is not passable");
    if (!starts.insert(start).second) throw InstanceError(tag + ": duplicate start");
    if (!goals.insert(goal).second) throw InstanceError(tag + ": duplicate goal");

    DistanceField field = bfs_distances(*map_, goal);
    if (!field.reachable(start)) throw InstanceError(tag + ": goal unreachable from start");
    agents_.push_back(Agent{id, start, goal, field[start]});
    sum_of_distances_ += field[start];
    heuristics_.push_back(std::move(field));
  }
}

}  // namespace mapf
