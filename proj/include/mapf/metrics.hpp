#pragma once

#include <cstdint>
#include <optional>

#include "mapf/event_log.hpp"
#include "mapf/solution.hpp"

namespace mapf {

struct MetricsSummary {
  double suboptimality = 0.0;
  double auc = 0.0;  // sum of delays x seconds
  std::uint64_t npo_total = 0;
  std::uint64_t dp = 0;
  std::optional<double> exp;  // undefined when npo_total == 0
  Cost final_soc = 0;
  Cost initial_soc = 0;
};

// Sum of delays over the sum of shortest distances. Throws std::domain_error
// when every agent starts on its goal.
double suboptimality_ratio(const Instance& instance, const Solution& solution);

// Step-function integral of the best-known sum of delays from the first event
// to the budget. Throws std::invalid_argument on an empty log.
double compute_auc(const RunEventLog& log);

// (NPO* - DP) / NPO*. Throws std::domain_error when npo_total is 0 or dp is
// outside [0, npo_total].
double compute_exp(double npo_total, double dp);

// Number of destroy/repair pairs on the lineage of the final best-known
// solution, following parent_serial links back to the initial solution.
std::uint64_t depth_tracking(const RunEventLog& log);

MetricsSummary summarize(const Instance& instance, const Solution& final_solution,
                         const RunEventLog& log, Cost initial_soc);

}  // namespace mapf
