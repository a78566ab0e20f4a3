#pragma once

#include <limits>
#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

// Exact unweighted distance from every cell to one goal. Serves as the
// space-time A* heuristic and as the shortest-path distance d_i.
struct DistanceField {
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  Vertex goal = kNoVertex;
  std::vector<int> dist;

  int operator[](Vertex v) const { return dist[v]; }
  bool reachable(Vertex v) const { return dist[v] != kUnreachable; }
};

// Breadth-first search outward from goal. Blocked and disconnected cells
// carry kUnreachable. Throws std::invalid_argument if goal is not passable.
DistanceField bfs_distances(const GridMap& map, Vertex goal);

}  // namespace mapf
