#include "mapf/reservation_table.hpp"

#include <algorithm>

namespace mapf {

ReservationTable::ReservationTable(const GridMap& map)
    : by_cell_(map.cell_count()),
      park_start_(map.cell_count(), kForever),
      park_agent_(map.cell_count(), -1),
      last_(map.cell_count(), -1) {}

void ReservationTable::add(const Path& path) {
  for (Timestep t = 0; t <= path.end_time(); ++t) {
    const Vertex v = path.states[t];
    auto& slots = by_cell_[v];
    if (static_cast<Timestep>(slots.size()) <= t) slots.resize(t + 1, -1);
    slots[t] = path.agent_id;
    last_[v] = std::max(last_[v], t);
    ++vertex_entries_;
    if (t > 0 && path.states[t - 1] != v) ++edge_entries_;
  }
  const Vertex goal = path.states.back();
  park_start_[goal] = path.end_time();
  park_agent_[goal] = path.agent_id;
  last_[goal] = kForever;
  horizon_ = std::max(horizon_, path.end_time());
}

AgentId ReservationTable::occupant(Vertex v, Timestep t) const {
  const auto& slots = by_cell_[v];
  if (t < static_cast<Timestep>(slots.size()) && slots[t] >= 0) return slots[t];
  if (t >= park_start_[v]) return park_agent_[v];
  return -1;
}

bool ReservationTable::edge_free(Vertex from, Vertex to, Timestep arrival) const {
  if (from == to || arrival <= 0) return true;
  const AgentId other = occupant(to, arrival - 1);
  return other < 0 || occupant(from, arrival) != other;
}

ReservationTable build_reservation(const GridMap& map, std::span<const Path> paths,
                                   Timestep horizon_hint) {
  ReservationTable table(map);
  for (const Path& p : paths) table.add(p);
  table.extend_horizon(horizon_hint);
  return table;
}

}  // namespace mapf
