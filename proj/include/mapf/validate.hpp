#pragma once

#include <compare>
#include <string>
#include <vector>

#include "mapf/solution.hpp"

namespace mapf {

enum class ConflictKind { vertex, edge };

// A collision between two agents. For a vertex conflict both agents are at
// `location` at `timestep`. For an edge conflict `first` moves from
// `location` to `other_location`, arriving at `timestep`, while `second`
// moves the opposite way.
struct Conflict {
  ConflictKind kind = ConflictKind::vertex;
  AgentId first = -1;  // first < second
  AgentId second = -1;
  Timestep timestep = 0;
  Vertex location = kNoVertex;
  Vertex other_location = kNoVertex;

  friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

enum class PathErrorKind { missing_path, empty_path, wrong_agent_id, off_map, wrong_start, wrong_goal, invalid_move };

struct PathError {
  PathErrorKind kind;
  AgentId agent;
  Timestep timestep;  // where the defect sits, 0 when not applicable

  friend bool operator==(const PathError&, const PathError&) = default;
};

struct ConflictReport {
  std::vector<Conflict> conflicts;  // sorted
  std::vector<PathError> path_errors;

  bool feasible() const { return conflicts.empty() && path_errors.empty(); }
};

// Checks path structure (endpoints, unit moves over passable cells) and all
// pairwise vertex and swap conflicts, treating every agent as parked at its
// last vertex after its path ends. Following into a just-vacated cell is legal.
ConflictReport validate_solution(const Instance& instance, const Solution& solution);

std::string to_string(const Conflict& c);
std::string to_string(const PathError& e);

}  // namespace mapf
