#include "mapf/validate.hpp"

#include <algorithm>

namespace mapf {

namespace {

void check_structure(const Instance& instance, const Solution& solution, ConflictReport& report,
                     std::vector<bool>& usable) {
  const GridMap& map = instance.map();
  usable.assign(instance.num_agents(), false);
  for (AgentId id = 0; id < instance.num_agents(); ++id) {
    if (id >= solution.num_agents()) {
      report.path_errors.push_back({PathErrorKind::missing_path, id, 0});
      continue;
    }
    const Path& p = solution.path(id);
    if (p.states.empty()) {
      report.path_errors.push_back({PathErrorKind::empty_path, id, 0});
      continue;
    }
    if (p.agent_id != id) report.path_errors.push_back({PathErrorKind::wrong_agent_id, id, 0});
    bool on_map = true;
    for (Timestep t = 0; t <= p.end_time(); ++t) {
      if (p.states[t] < 0 || p.states[t] >= map.cell_count()) {
        report.path_errors.push_back({PathErrorKind::off_map, id, t});
        on_map = false;
        break;
      }
    }
    if (!on_map) continue;
    usable[id] = true;
    const Agent& agent = instance.agent(id);
    if (p.states.front() != agent.start) report.path_errors.push_back({PathErrorKind::wrong_start, id, 0});
    if (p.states.back() != agent.goal)
      report.path_errors.push_back({PathErrorKind::wrong_goal, id, p.end_time()});
    for (Timestep t = 0; t <= p.end_time(); ++t) {
      const Vertex v = p.states[t];
      const bool ok = map.is_passable(v) &&
                      (t == 0 || v == p.states[t - 1] || map.adjacent(p.states[t - 1], v));
      if (!ok) report.path_errors.push_back({PathErrorKind::invalid_move, id, t});
    }
  }
}

}  // namespace

ConflictReport validate_solution(const Instance& instance, const Solution& solution) {
  ConflictReport report;
  std::vector<bool> usable;
  check_structure(instance, solution, report, usable);

  std::vector<AgentId> agents;
  Timestep horizon = 0;
  for (AgentId id = 0; id < instance.num_agents(); ++id) {
    if (!usable[id]) continue;
    agents.push_back(id);
    horizon = std::max(horizon, solution.path(id).end_time());
  }

  // Per-timestep occupancy as intrusive lists: head[cell] -> first agent,
  // next[agent] -> following agent in the same cell.
  const int k = instance.num_agents();
  std::vector<AgentId> head(instance.map().cell_count(), -1);
  std::vector<AgentId> next(k, -1);
  std::vector<Vertex> prev(k, kNoVertex), cur(k, kNoVertex);
  std::vector<Vertex> touched;

  for (Timestep t = 0; t <= horizon; ++t) {
    for (Vertex v : touched) head[v] = -1;
    touched.clear();

    for (AgentId a : agents) {
      cur[a] = solution.path(a).at(t);
      if (head[cur[a]] == -1) touched.push_back(cur[a]);
      next[a] = head[cur[a]];
      head[cur[a]] = a;
    }

    for (Vertex v : touched) {
      for (AgentId a = head[v]; a != -1; a = next[a])
        for (AgentId b = next[a]; b != -1; b = next[b])
          report.conflicts.push_back(
              {ConflictKind::vertex, std::min(a, b), std::max(a, b), t, v, kNoVertex});
    }

    if (t > 0) {
      for (AgentId a : agents) {
        const Vertex from = prev[a], to = cur[a];
        if (from == to) continue;
        for (AgentId b = head[from]; b != -1; b = next[b]) {
          if (b > a && prev[b] == to)
            report.conflicts.push_back({ConflictKind::edge, a, b, t, from, to});
        }
      }
    }
    std::swap(prev, cur);
  }

  std::sort(report.conflicts.begin(), report.conflicts.end());
  return report;
}

std::string to_string(const Conflict& c) {
  std::string s = c.kind == ConflictKind::vertex ? "vertex" : "edge";
  s += " conflict between agents " + std::to_string(c.first) + " and " + std::to_string(c.second) +
       " at t=" + std::to_string(c.timestep) + " cell " + std::to_string(c.location);
  if (c.kind == ConflictKind::edge) s += "->" + std::to_string(c.other_location);
  return s;
}

std::string to_string(const PathError& e) {
  static constexpr const char* names[] = {"missing path", "empty path",  "agent id mismatch",
                                          "vertex off map", "wrong start", "wrong goal",
                                          "invalid move"};
  return std::string(names[static_cast<int>(e.kind)]) + " for agent " + std::to_string(e.agent) +
         " at t=" + std::to_string(e.timestep);
}

}  // namespace mapf
