#pragma once

#include <cstdint>

#include "mapf/distance_field.hpp"
#include "mapf/reservation_table.hpp"

namespace mapf {

enum class PlanStatus {
  found,
  infeasible,        // open list exhausted: no conflict-free path exists
  budget_exhausted,  // node budget spent before reaching the goal
};

struct PlanResult {
  PlanStatus status = PlanStatus::infeasible;
  Path path;  // set when status == found
  std::int64_t expansions = 0;

  bool found() const { return status == PlanStatus::found; }
};

// Expansion budget used when the caller sets none: 4 * (d + 1) * map width.
std::int64_t default_node_budget(const GridMap& map, const DistanceField& dist, Vertex start);

// Space-time A* (f = t + dist, raised to the earliest timestep at which the
// goal stays free) for one agent against a reservation table.
// The returned path avoids every reserved state, every swap with a reserved
// move, and only ends at the goal once no reservation uses the goal cell at
// a later timestep. Beyond the table horizon only parked cells stay blocked,
// so states past it are merged per vertex and the search space is finite.
// Ties on f prefer larger t, then the smaller vertex, then moves over waits.
PlanResult plan_constrained_path(const GridMap& map, AgentId agent, Vertex start, Vertex goal,
                                 const DistanceField& dist, const ReservationTable& table,
                                 std::int64_t node_budget);

}  // namespace mapf
