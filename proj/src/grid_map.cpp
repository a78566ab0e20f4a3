#include "mapf/grid_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace mapf {

GridMap::GridMap(int width, int height, std::vector<bool> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked)) {
  if (width_ <= 0 || height_ <= 0)
    throw std::invalid_argument("grid dimensions must be positive");
  if (blocked_.size() != static_cast<std::size_t>(width_) * height_)
    throw std::invalid_argument("blocked mask does not match grid dimensions");

  adjacency_.assign(cell_count(), {kNoVertex, kNoVertex, kNoVertex, kNoVertex});
  degree_.assign(cell_count(), 0);
  for (Vertex v = 0; v < cell_count(); ++v) {
    if (blocked_[v]) continue;
    ++passable_count_;
    const int c = col(v), r = row(v);
    const std::array<std::array<int, 2>, 4> steps{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
    for (const auto& [dc, dr] : steps) {
      if (!in_bounds(c + dc, r + dr)) continue;
      const Vertex u = vertex(c + dc, r + dr);
      if (!blocked_[u]) adjacency_[v][degree_[v]++] = u;
    }
    if (degree_[v] >= 3) intersections_.push_back(v);
  }
}

bool GridMap::adjacent(Vertex u, Vertex v) const {
  if (!is_passable(u) || !is_passable(v)) return false;
  const auto n = neighbors(u);
  return std::find(n.begin(), n.end(), v) != n.end();
}

std::size_t GridMap::edge_count() const {
  std::size_t total = 0;
  for (Vertex v = 0; v < cell_count(); ++v) total += degree_[v];
  return total / 2;
}

}  // namespace mapf
