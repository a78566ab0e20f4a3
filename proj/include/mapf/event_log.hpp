#pragma once

#include <cstdint>
#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

// One install of a new best-known solution. task_serial identifies the
// destroy/repair task that produced it (0 for the initial solution) and
// parent_serial the best-known solution that task started from.
struct ImprovementEvent {
  double time = 0.0;  // seconds since run start
  Cost soc = 0;
  Cost sum_of_delays = 0;
  std::uint64_t task_serial = 0;
  std::uint64_t parent_serial = 0;

  friend bool operator==(const ImprovementEvent&, const ImprovementEvent&) = default;
};

struct RunEventLog {
  std::vector<ImprovementEvent> improvements;  // strictly decreasing soc
  std::uint64_t npo_total = 0;                 // destroy/repair pairs finished within budget
  std::uint64_t dp = 0;                        // depth of the final best-known solution
  double budget = 0.0;                         // T in seconds
  std::vector<std::uint64_t> per_thread_npo;   // DETA replicas
  std::uint64_t dropped_tasks = 0;             // finished after T, results discarded
};

}  // namespace mapf
