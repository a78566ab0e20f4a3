#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "mapf/solution.hpp"

namespace mapf {

// Space-time occupancy of already-planned paths. Each path reserves its
// states, its moves, and its goal cell from its last timestep onwards.
// Single-threaded; each repair builds its own table.
class ReservationTable {
 public:
  static constexpr Timestep kForever = std::numeric_limits<Timestep>::max();

  explicit ReservationTable(const GridMap& map);

  // Path must be structurally valid and must not collide with reserved paths.
  void add(const Path& path);

  // Agent at v at timestep t, or -1. Covers goal parking.
  AgentId occupant(Vertex v, Timestep t) const;
  bool vertex_free(Vertex v, Timestep t) const { return occupant(v, t) < 0; }

  // True unless some reserved agent moves to -> from, arriving at `arrival`
  // (the swap that a move from -> to arriving at `arrival` would collide with).
  bool edge_free(Vertex from, Vertex to, Timestep arrival) const;

  // Latest timestep at which v is reserved, kForever when an agent parks on
  // v, -1 when v is never reserved.
  Timestep last_reserved(Vertex v) const { return last_[v]; }
  Timestep park_start(Vertex v) const { return park_start_[v]; }

  // Largest timestep holding an explicit (non-parking) reservation.
  Timestep horizon() const { return horizon_; }
  void extend_horizon(Timestep t) { horizon_ = std::max(horizon_, t); }

  std::size_t vertex_entry_count() const { return vertex_entries_; }
  std::size_t edge_entry_count() const { return edge_entries_; }

 private:
  std::vector<std::vector<AgentId>> by_cell_;  // by_cell_[v][t]
  std::vector<Timestep> park_start_;
  std::vector<AgentId> park_agent_;
  std::vector<Timestep> last_;
  Timestep horizon_ = 0;
  std::size_t vertex_entries_ = 0;
  std::size_t edge_entries_ = 0;
};

// Table over all given paths. horizon_hint raises the reported horizon.
ReservationTable build_reservation(const GridMap& map, std::span<const Path> paths,
                                   Timestep horizon_hint = 0);

}  // namespace mapf
