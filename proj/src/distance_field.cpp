#include "mapf/distance_field.hpp"

#include <queue>
#include <stdexcept>

namespace mapf {

DistanceField bfs_distances(const GridMap& map, Vertex goal) {
  if (!map.is_passable(goal))
    throw std::invalid_argument("bfs_distances: goal cell is not passable");

  DistanceField field;
  field.goal = goal;
  field.dist.assign(map.cell_count(), DistanceField::kUnreachable);
  field.dist[goal] = 0;

  std::queue<Vertex> open;
  open.push(goal);
  while (!open.empty()) {
    const Vertex v = open.front();
    open.pop();
    for (Vertex u : map.neighbors(v)) {
      if (field.dist[u] != DistanceField::kUnreachable) continue;
      field.dist[u] = field.dist[v] + 1;
      open.push(u);
    }
  }
  return field;
}

}  // namespace mapf
