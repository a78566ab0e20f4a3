#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "mapf/rng.hpp"
#include "mapf/solution.hpp"

namespace mapf {

enum class DestroyHeuristic { random = 0, agent = 1, map = 2 };
inline constexpr int kNumHeuristics = 3;
inline constexpr double kWeightFloor = 1e-3;

std::string_view to_string(DestroyHeuristic h);

// Roulette-wheel weights w_H over the destroy heuristics, all starting at 1.
struct HeuristicWeights {
  std::array<double, kNumHeuristics> w{1.0, 1.0, 1.0};
  double gamma = 0.01;  // reaction factor

  double operator[](DestroyHeuristic h) const { return w[static_cast<int>(h)]; }
  double& operator[](DestroyHeuristic h) { return w[static_cast<int>(h)]; }
  friend bool operator==(const HeuristicWeights&, const HeuristicWeights&) = default;
};

struct Neighborhood {
  DestroyHeuristic heuristic = DestroyHeuristic::random;
  std::vector<AgentId> agents;
};

// Agents recently used as agent-based seeds.
class TabuState {
 public:
  bool contains(AgentId a) const { return a < static_cast<AgentId>(tabu_.size()) && tabu_[a]; }
  void insert(AgentId a);
  void clear() { tabu_.clear(); }
  std::size_t size() const;

 private:
  std::vector<bool> tabu_;
};

// Picks H with probability w_H / sum(w).
DestroyHeuristic select_heuristic(const HeuristicWeights& weights, Rng& rng);

// w_H <- gamma * max(improvement, 0) + (1 - gamma) * w_H, floored.
HeuristicWeights update_weight_success(HeuristicWeights weights, DestroyHeuristic h, double improvement);
// w_H <- (1 - gamma) * w_H, floored.
HeuristicWeights update_weight_failure(HeuristicWeights weights, DestroyHeuristic h);

// min(N, k) distinct agents drawn uniformly.
Neighborhood random_destroy(const Instance& instance, int neighborhood_size, Rng& rng);

// Seeds on the most delayed non-tabu agent and grows the neighbourhood with
// random walks along shorter-than-current routes, collecting agents whose
// states those walks would collide with. Walks total at most 10 * width
// steps; leftover slots are filled uniformly. Falls back to random_destroy
// when no agent is delayed.
Neighborhood agent_based_destroy(const Instance& instance, const Solution& solution,
                                 int neighborhood_size, Rng& rng, TabuState& tabu);

// Breadth-first sweep from a random intersection (degree >= 3), collecting
// agents whose paths visit swept cells. Falls back to random_destroy on maps
// without intersections; leftover slots are filled uniformly.
Neighborhood map_based_destroy(const Instance& instance, const Solution& solution,
                               int neighborhood_size, Rng& rng);

Neighborhood destroy(DestroyHeuristic h, const Instance& instance, const Solution& solution,
                     int neighborhood_size, Rng& rng, TabuState& tabu);

}  // namespace mapf
