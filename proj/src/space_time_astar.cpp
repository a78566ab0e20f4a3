#include "mapf/space_time_astar.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mapf {

namespace {

struct Node {
  Vertex v;
  Timestep t;
  int f;
  int parent;
  bool wait;
  std::uint32_t seq;
};

struct OpenOrder {
  const std::vector<Node>* nodes;
  // std::priority_queue pops the greatest element, so "a < b" means b first.
  bool operator()(int ia, int ib) const {
    const Node& a = (*nodes)[ia];
    const Node& b = (*nodes)[ib];
    if (a.f != b.f) return a.f > b.f;
    if (a.t != b.t) return a.t < b.t;
    if (a.v != b.v) return a.v > b.v;
    if (a.wait != b.wait) return a.wait;
    return a.seq > b.seq;
  }
};

struct Visit {
  Timestep best_t;
  bool closed;
};

}  // namespace

std::int64_t default_node_budget(const GridMap& map, const DistanceField& dist, Vertex start) {
  const std::int64_t d = dist.reachable(start) ? dist[start] : map.cell_count();
  return 4 * (d + 1) * map.width();
}

PlanResult plan_constrained_path(const GridMap& map, AgentId agent, Vertex start, Vertex goal,
                                 const DistanceField& dist, const ReservationTable& table,
                                 std::int64_t node_budget) {
  if (!map.is_passable(start) || !map.is_passable(goal))
    throw std::invalid_argument("plan_constrained_path: endpoint not passable");
  if (dist.goal != goal) throw std::invalid_argument("plan_constrained_path: distance field goal mismatch");

  PlanResult result;
  if (!dist.reachable(start) || !table.vertex_free(start, 0)) return result;

  // States after the horizon see a static table, so t is capped in the key.
  const Timestep cap = table.horizon() + 1;
  const auto key = [cap](Vertex v, Timestep t) {
    return static_cast<std::int64_t>(v) * (cap + 1) + std::min(t, cap);
  };
  const Timestep goal_free_from = table.last_reserved(goal);
  // The path cannot end before the goal stays free, so h is lifted to that
  // arrival time. Still consistent.
  if (goal_free_from == ReservationTable::kForever) return result;  // someone parks on our goal
  const Timestep earliest_end = goal_free_from + 1;
  const auto f_of = [&](Vertex v, Timestep t) { return std::max(t + dist[v], earliest_end); };

  std::vector<Node> nodes;
  nodes.reserve(1024);
  std::priority_queue<int, std::vector<int>, OpenOrder> open(OpenOrder{&nodes});
  std::unordered_map<std::int64_t, Visit> visits;
  std::uint32_t seq = 0;

  nodes.push_back({start, 0, f_of(start, 0), -1, false, seq++});
  visits[key(start, 0)] = {0, false};
  open.push(0);

  while (!open.empty()) {
    const int index = open.top();
    open.pop();
    const Node node = nodes[index];
    Visit& visit = visits[key(node.v, node.t)];
    if (visit.closed || visit.best_t < node.t) continue;
    visit.closed = true;

    if (node.v == goal && goal_free_from < node.t) {
      result.status = PlanStatus::found;
      result.path.agent_id = agent;
      result.path.states.resize(node.t + 1);
      for (int i = index; i >= 0; i = nodes[i].parent) result.path.states[nodes[i].t] = nodes[i].v;
      return result;
    }
    if (result.expansions >= node_budget) {
      result.status = PlanStatus::budget_exhausted;
      return result;
    }
    ++result.expansions;

    const Timestep nt = node.t + 1;
    const auto expand = [&](Vertex to, bool wait) {
      if (!dist.reachable(to) || !table.vertex_free(to, nt) || !table.edge_free(node.v, to, nt))
        return;
      auto [it, fresh] = visits.try_emplace(key(to, nt), Visit{nt, false});
      if (!fresh) {
        if (it->second.closed || it->second.best_t <= nt) return;
        it->second.best_t = nt;
      }
      nodes.push_back({to, nt, f_of(to, nt), index, wait, seq++});
      open.push(static_cast<int>(nodes.size()) - 1);
    };
    for (Vertex to : map.neighbors(node.v)) expand(to, false);
    expand(node.v, true);
  }
  return result;
}

}  // namespace mapf
