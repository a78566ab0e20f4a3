#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mapf {

using Vertex = int;       // row-major cell index, row * width + col
using Timestep = int;
using AgentId = int;
using Cost = std::int64_t;

inline constexpr Vertex kNoVertex = -1;

// 4-connected grid graph. Vertices are passable cells; edges join passable
// 4-neighbours. Immutable after construction.
class GridMap {
 public:
  // blocked.size() must equal width * height.
  GridMap(int width, int height, std::vector<bool> blocked);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  Vertex vertex(int col, int row) const { return row * width_ + col; }
  int col(Vertex v) const { return v % width_; }
  int row(Vertex v) const { return v / width_; }

  bool in_bounds(int col, int row) const {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  bool is_passable(Vertex v) const {
    return v >= 0 && v < cell_count() && !blocked_[v];
  }
  bool is_blocked(Vertex v) const { return !is_passable(v); }

  // Passable 4-neighbours of v, in order up, left, right, down (ascending
  // vertex index). Empty for blocked cells.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_[v].data(), static_cast<std::size_t>(degree_[v])};
  }
  int degree(Vertex v) const { return degree_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  // Passable cells with degree >= 3, ascending.
  const std::vector<Vertex>& intersections() const { return intersections_; }
  int passable_count() const { return passable_count_; }
  std::size_t edge_count() const;

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.blocked_ == b.blocked_;
  }

 private:
  int width_;
  int height_;
  int passable_count_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::array<Vertex, 4>> adjacency_;
  std::vector<std::uint8_t> degree_;
  std::vector<Vertex> intersections_;
};

}  // namespace mapf
