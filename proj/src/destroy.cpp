#include "mapf/destroy.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "mapf/reservation_table.hpp"

namespace mapf {

namespace {

std::size_t uniform_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Builds a neighbourhood incrementally, keeping insertion order.
class Collector {
 public:
  Collector(int num_agents, int target) : member_(num_agents, false), target_(target) {}

  bool full() const { return static_cast<int>(agents_.size()) >= target_; }
  bool contains(AgentId a) const { return member_[a]; }
  void add(AgentId a) {
    if (a < 0 || member_[a] || full()) return;
    member_[a] = true;
    agents_.push_back(a);
  }
  // Uniform fill of the remaining slots from non-members.
  void fill_randomly(Rng& rng) {
    if (full()) return;
    std::vector<AgentId> rest;
    for (AgentId a = 0; a < static_cast<AgentId>(member_.size()); ++a)
      if (!member_[a]) rest.push_back(a);
    for (std::size_t i = 0; i < rest.size() && !full(); ++i) {
      std::swap(rest[i], rest[i + uniform_index(rest.size() - i, rng)]);
      add(rest[i]);
    }
  }
  const std::vector<AgentId>& agents() const { return agents_; }
  std::vector<AgentId> take() { return std::move(agents_); }

 private:
  std::vector<bool> member_;
  std::vector<AgentId> agents_;
  int target_;
};

int target_size(const Instance& instance, int neighborhood_size) {
  return std::clamp(neighborhood_size, 1, instance.num_agents());
}

std::vector<AgentId> all_agents(const Instance& instance) {
  std::vector<AgentId> ids(instance.num_agents());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

AgentId most_delayed(const std::vector<Cost>& delays, const TabuState& tabu) {
  AgentId best = -1;
  for (AgentId a = 0; a < static_cast<AgentId>(delays.size()); ++a)
    if (delays[a] > 0 && !tabu.contains(a) && (best < 0 || delays[a] > delays[best])) best = a;
  return best;
}

// One walk for `agent` from (loc, t): each step moves to a random neighbour
// (or waits) that still admits arrival before the agent's current cost.
void random_walk(const Instance& instance, const ReservationTable& table, AgentId agent, Vertex loc,
                 Timestep t, Timestep upper, int& steps_left, Collector& out, Rng& rng) {
  const GridMap& map = instance.map();
  const DistanceField& h = instance.heuristic(agent);
  std::vector<Vertex> options;
  for (; t < upper && steps_left > 0 && !out.full(); ++t, --steps_left) {
    const auto nbrs = map.neighbors(loc);
    options.assign(nbrs.begin(), nbrs.end());
    options.push_back(loc);
    bool moved = false;
    while (!options.empty()) {
      const std::size_t i = uniform_index(options.size(), rng);
      const Vertex next = options[i];
      if (t + 1 + h[next] < upper) {
        const AgentId there = table.occupant(next, t + 1);
        if (there != agent) out.add(there);
        const AgentId swapper = table.occupant(next, t);
        if (swapper >= 0 && swapper != agent && table.occupant(loc, t + 1) == swapper)
          out.add(swapper);
        loc = next;
        moved = true;
        break;
      }
      options.erase(options.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (!moved) break;
  }
}

}  // namespace

std::string_view to_string(DestroyHeuristic h) {
  switch (h) {
    case DestroyHeuristic::random: return "random";
    case DestroyHeuristic::agent: return "agent";
    case DestroyHeuristic::map: return "map";
  }
  return "?";
}

void TabuState::insert(AgentId a) {
  if (a >= static_cast<AgentId>(tabu_.size())) tabu_.resize(a + 1, false);
  tabu_[a] = true;
}

std::size_t TabuState::size() const { return std::count(tabu_.begin(), tabu_.end(), true); }

DestroyHeuristic select_heuristic(const HeuristicWeights& weights, Rng& rng) {
  const double total = std::accumulate(weights.w.begin(), weights.w.end(), 0.0);
  double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  for (int i = 0; i < kNumHeuristics; ++i) {
    if (r < weights.w[i]) return static_cast<DestroyHeuristic>(i);
    r -= weights.w[i];
  }
  return static_cast<DestroyHeuristic>(kNumHeuristics - 1);
}

HeuristicWeights update_weight_success(HeuristicWeights weights, DestroyHeuristic h, double improvement) {
  double& w = weights[h];
  w = weights.gamma * std::max(improvement, 0.0) + (1.0 - weights.gamma) * w;
  w = std::max(w, kWeightFloor);
  return weights;
}

HeuristicWeights update_weight_failure(HeuristicWeights weights, DestroyHeuristic h) {
  double& w = weights[h];
  w = std::max((1.0 - weights.gamma) * w, kWeightFloor);
  return weights;
}

Neighborhood random_destroy(const Instance& instance, int neighborhood_size, Rng& rng) {
  Collector out(instance.num_agents(), target_size(instance, neighborhood_size));
  out.fill_randomly(rng);
  return {DestroyHeuristic::random, out.take()};
}

Neighborhood agent_based_destroy(const Instance& instance, const Solution& solution,
                                 int neighborhood_size, Rng& rng, TabuState& tabu) {
  const int target = target_size(instance, neighborhood_size);
  if (target == instance.num_agents()) return {DestroyHeuristic::agent, all_agents(instance)};

  const auto delays = agent_delays(instance, solution);
  AgentId seed = most_delayed(delays, tabu);
  if (seed < 0 && tabu.size() > 0) {
    tabu.clear();
    seed = most_delayed(delays, tabu);
  }
  if (seed < 0) {
    Neighborhood n = random_destroy(instance, neighborhood_size, rng);
    n.heuristic = DestroyHeuristic::agent;
    return n;
  }
  tabu.insert(seed);

  const ReservationTable table = build_reservation(instance.map(), solution.paths());
  Collector out(instance.num_agents(), target);
  out.add(seed);
  int steps_left = 10 * instance.map().width();
  AgentId walker = seed;
  for (int walk = 0; walk < 10 && !out.full() && steps_left > 0; ++walk) {
    const Path& p = solution.path(walker);
    const auto t0 = static_cast<Timestep>(uniform_index(p.states.size(), rng));
    random_walk(instance, table, walker, p.states[t0], t0, p.end_time(), steps_left, out, rng);
    walker = out.agents()[uniform_index(out.agents().size(), rng)];
  }
  out.fill_randomly(rng);
  return {DestroyHeuristic::agent, out.take()};
}

Neighborhood map_based_destroy(const Instance& instance, const Solution& solution,
                               int neighborhood_size, Rng& rng) {
  const GridMap& map = instance.map();
  const int target = target_size(instance, neighborhood_size);
  if (target == instance.num_agents()) return {DestroyHeuristic::map, all_agents(instance)};
  if (map.intersections().empty()) {
    Neighborhood n = random_destroy(instance, neighborhood_size, rng);
    n.heuristic = DestroyHeuristic::map;
    return n;
  }

  std::vector<std::vector<AgentId>> visitors(map.cell_count());
  for (const Path& p : solution.paths())
    for (Vertex v : p.states)
      if (visitors[v].empty() || visitors[v].back() != p.agent_id) visitors[v].push_back(p.agent_id);

  Collector out(instance.num_agents(), target);
  const Vertex origin = map.intersections()[uniform_index(map.intersections().size(), rng)];
  std::vector<bool> seen(map.cell_count(), false);
  std::queue<Vertex> open;
  open.push(origin);
  seen[origin] = true;
  std::vector<AgentId> candidates;
  while (!open.empty() && !out.full()) {
    const Vertex v = open.front();
    open.pop();
    candidates.clear();
    for (AgentId a : visitors[v])
      if (!out.contains(a)) candidates.push_back(a);
    for (std::size_t i = 0; i < candidates.size() && !out.full(); ++i) {
      std::swap(candidates[i], candidates[i + uniform_index(candidates.size() - i, rng)]);
      out.add(candidates[i]);
    }
    for (Vertex u : map.neighbors(v)) {
      if (seen[u]) continue;
      seen[u] = true;
      open.push(u);
    }
  }
  out.fill_randomly(rng);
  return {DestroyHeuristic::map, out.take()};
}

Neighborhood destroy(DestroyHeuristic h, const Instance& instance, const Solution& solution,
                     int neighborhood_size, Rng& rng, TabuState& tabu) {
  switch (h) {
    case DestroyHeuristic::agent:
      return agent_based_destroy(instance, solution, neighborhood_size, rng, tabu);
    case DestroyHeuristic::map:
      return map_based_destroy(instance, solution, neighborhood_size, rng);
    case DestroyHeuristic::random:
      break;
  }
  return random_destroy(instance, neighborhood_size, rng);
}

}  // namespace mapf
