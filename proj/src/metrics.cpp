#include "mapf/metrics.hpp"

#include <stdexcept>
#include <unordered_map>

namespace mapf {

double suboptimality_ratio(const Instance& instance, const Solution& solution) {
  if (instance.sum_of_distances() == 0)
    throw std::domain_error("suboptimality ratio undefined: sum of shortest distances is 0");
  return static_cast<double>(sum_of_delays(instance, solution)) /
         static_cast<double>(instance.sum_of_distances());
}

double compute_auc(const RunEventLog& log) {
  if (log.improvements.empty()) throw std::invalid_argument("compute_auc: empty event log");
  double area = 0.0;
  const auto& ev = log.improvements;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    area += static_cast<double>(ev[i].sum_of_delays) * (ev[i + 1].time - ev[i].time);
  const double tail = log.budget - ev.back().time;
  if (tail > 0) area += static_cast<double>(ev.back().sum_of_delays) * tail;
  return area;
}

double compute_exp(double npo_total, double dp) {
  if (!(npo_total > 0)) throw std::domain_error("EXP undefined: no destroy/repair operations");
  if (dp < 0 || dp > npo_total) throw std::domain_error("EXP undefined: depth outside [0, NPO*]");
  return (npo_total - dp) / npo_total;
}

std::uint64_t depth_tracking(const RunEventLog& log) {
  if (log.improvements.empty()) return 0;
  std::unordered_map<std::uint64_t, std::size_t> by_serial;
  for (std::size_t i = 0; i < log.improvements.size(); ++i)
    by_serial[log.improvements[i].task_serial] = i;

  std::uint64_t depth = 0;
  std::size_t i = log.improvements.size() - 1;
  while (log.improvements[i].task_serial != 0) {
    if (++depth > log.improvements.size())
      throw std::logic_error("depth_tracking: cycle in event log lineage");
    const auto parent = by_serial.find(log.improvements[i].parent_serial);
    if (parent == by_serial.end() || parent->second == i)
      throw std::logic_error("depth_tracking: broken lineage in event log");
    i = parent->second;
  }
  return depth;
}

MetricsSummary summarize(const Instance& instance, const Solution& final_solution,
                         const RunEventLog& log, Cost initial_soc) {
  MetricsSummary m;
  m.suboptimality = suboptimality_ratio(instance, final_solution);
  m.auc = compute_auc(log);
  m.npo_total = log.npo_total;
  m.dp = depth_tracking(log);
  if (log.npo_total > 0)
    m.exp = compute_exp(static_cast<double>(log.npo_total), static_cast<double>(m.dp));
  m.final_soc = final_solution.soc();
  m.initial_soc = initial_soc;
  return m;
}

}  // namespace mapf
