#include "mapf/engine.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mapf/metrics.hpp"
#include "mapf/validate.hpp"

namespace mapf {

namespace {

constexpr std::uint64_t kInitialStream = ~std::uint64_t{0};

class RunClock {
 public:
  using clock = std::chrono::steady_clock;

  RunClock() : start_(clock::now()) {}

  double elapsed() const { return std::chrono::duration<double>(clock::now() - start_).count(); }
  clock::time_point deadline(double budget) const {
    return start_ + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(budget));
  }

 private:
  clock::time_point start_;
};

bool validation_enabled(const RunParams& params) {
#ifndef NDEBUG
  (void)params;
  return true;
#else
  return params.validate;
#endif
}

void check_install(const Instance& instance, const Solution& solution, const RunParams& params) {
  if (!validation_enabled(params)) return;
  const ConflictReport report = validate_solution(instance, solution);
  if (report.feasible()) return;
  throw std::logic_error("infeasible solution installed: " +
                         (report.path_errors.empty() ? to_string(report.conflicts.front())
                                                     : to_string(report.path_errors.front())));
}

ImprovementEvent make_event(const Instance& instance, const Solution& solution, double time,
                            std::uint64_t serial, std::uint64_t parent) {
  return {time, solution.soc(), sum_of_delays(instance, solution), serial, parent};
}

TaskFunction resolve_task(const Instance& instance, const RunParams& params, const RunHooks& hooks) {
  if (hooks.task) return hooks.task;
  return [&instance, &params](const Solution& snapshot, const HeuristicWeights& weights, Rng& rng,
                              TabuState& tabu) {
    return destroy_and_repair_task(instance, params, snapshot, weights, rng, tabu);
  };
}

std::optional<Solution> find_initial(const Instance& instance, const RunParams& params,
                                     const RunHooks& hooks) {
  if (hooks.initial) return hooks.initial;
  Rng rng = make_stream(params.seed, kInitialStream);
  return initial_solution(instance, rng, params.restart_limit, params.node_budget);
}

// Installs the initial solution as the first event, or reports failure.
std::optional<std::pair<Solution, ImprovementEvent>> start_run(const Instance& instance,
                                                               const RunParams& params,
                                                               const RunHooks& hooks,
                                                               const RunClock& clock) {
  std::optional<Solution> initial = find_initial(instance, params, hooks);
  if (!initial) return std::nullopt;
  check_install(instance, *initial, params);
  ImprovementEvent event = make_event(instance, *initial, clock.elapsed(), 0, 0);
  if (hooks.on_install) hooks.on_install(*initial, event);
  return std::make_pair(std::move(*initial), event);
}

RunResult unsolved(const RunParams& params) {
  RunResult result;
  result.termination = Termination::no_initial_solution;
  result.event_log.budget = params.time_budget;
  return result;
}

RunResult finish(Solution best, RunEventLog log, Termination termination, HeuristicWeights weights) {
  RunResult result;
  result.initial_soc = log.improvements.front().soc;
  log.dp = depth_tracking(log);
  result.event_log = std::move(log);
  result.final_solution = std::move(best);
  result.termination = termination;
  result.final_weights = weights;
  return result;
}

struct ReplicaOutcome {
  Solution best;
  std::vector<ImprovementEvent> events;  // installs after the initial solution
  std::uint64_t npo = 0;
  std::uint64_t dropped = 0;
  Termination termination = Termination::budget;
  HeuristicWeights weights;
};

// The MAPF-LNS loop shared by the sequential engine and each DETA replica.
ReplicaOutcome lns_loop(const Instance& instance, const RunParams& params, const RunHooks& hooks,
                        const TaskFunction& task, Solution initial, std::uint64_t stream_seed,
                        const RunClock& clock, std::mutex* hook_mu) {
  ReplicaOutcome out;
  out.best = std::move(initial);
  out.weights.gamma = params.gamma;
  TabuState tabu;
  std::uint64_t best_serial = 0;

  for (std::uint64_t serial = 1;; ++serial) {
    if (params.iteration_cap && serial > *params.iteration_cap) {
      out.termination = Termination::iteration_cap;
      break;
    }
    if (clock.elapsed() >= params.time_budget) break;

    Rng rng = make_stream(stream_seed, serial);
    TaskReport report = task(out.best, out.weights, rng, tabu);
    const bool late = clock.elapsed() > params.time_budget;
    if (!report.success) {
      out.weights = update_weight_failure(out.weights, report.heuristic);
      if (late) {
        ++out.dropped;
        break;
      }
      ++out.npo;
      continue;
    }
    if (late) {
      ++out.dropped;
      break;
    }
    ++out.npo;
    out.weights = update_weight_success(out.weights, report.heuristic,
                                        static_cast<double>(report.improvement));
    check_install(instance, report.solution, params);
    const ImprovementEvent event =
        make_event(instance, report.solution, clock.elapsed(), serial, best_serial);
    out.events.push_back(event);
    out.best = std::move(report.solution);
    best_serial = serial;
    tabu.clear();
    if (hooks.on_install) {
      if (hook_mu) {
        std::lock_guard lock(*hook_mu);
        hooks.on_install(out.best, event);
      } else {
        hooks.on_install(out.best, event);
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::sequential: return "sequential";
    case Algorithm::drop: return "drop";
    case Algorithm::sync: return "sync";
    case Algorithm::deta: return "deta";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::budget: return "budget";
    case Termination::iteration_cap: return "iteration_cap";
    case Termination::no_initial_solution: return "no-initial-solution";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::sequential, Algorithm::drop, Algorithm::sync, Algorithm::deta})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

void check_params(const RunParams& params) {
  if (!(params.time_budget > 0)) throw std::invalid_argument("time budget must be positive");
  if (params.neighborhood_size < 1) throw std::invalid_argument("neighborhood size must be >= 1");
  if (params.threads < 1) throw std::invalid_argument("thread count must be >= 1");
  if (params.queue_capacity != 0 && params.queue_capacity < params.threads)
    throw std::invalid_argument("queue capacity must be >= thread count");
  if (params.gamma < 0 || params.gamma > 1) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (params.restart_limit < 1) throw std::invalid_argument("restart limit must be >= 1");
}

std::uint64_t replica_seed(const RunParams& params, int replica) {
  if (replica < static_cast<int>(params.replica_seeds.size())) return params.replica_seeds[replica];
  if (replica == 0) return params.iteration_seed.value_or(params.seed);
  return mix_seed(params.seed, static_cast<std::uint64_t>(replica));
}

TaskReport destroy_and_repair_task(const Instance& instance, const RunParams& params,
                                   const Solution& snapshot, const HeuristicWeights& weights,
                                   Rng& rng, TabuState& tabu) {
  TaskReport report;
  report.heuristic = select_heuristic(weights, rng);
  const Neighborhood neighborhood =
      destroy(report.heuristic, instance, snapshot, params.neighborhood_size, rng, tabu);
  report.neighborhood_size = neighborhood.agents.size();

  Cost destroyed_cost = 0;
  for (AgentId a : neighborhood.agents) destroyed_cost += snapshot.path(a).cost();

  const auto order = random_priority_order(neighborhood.agents, rng);
  RepairOutcome outcome = pp_repair(
      instance, reserve_all_except(instance, snapshot, neighborhood.agents), order, params.node_budget);
  report.expansions = outcome.expansions_used;
  if (!outcome.success) return report;

  const Cost repaired_cost = outcome.cost();
  Solution next = snapshot;
  for (Path& p : outcome.new_paths) next.replace_path(std::move(p));
  report.repaired_soc = next.soc();
  if (repaired_cost >= destroyed_cost) return report;

  report.success = true;
  report.improvement = destroyed_cost - repaired_cost;
  report.solution = std::move(next);
  return report;
}

RunResult run_sequential_lns(const Instance& instance, const RunParams& params, const RunHooks& hooks) {
  check_params(params);
  const RunClock clock;
  auto start = start_run(instance, params, hooks, clock);
  if (!start) return unsolved(params);

  RunEventLog log;
  log.budget = params.time_budget;
  log.improvements.push_back(start->second);
  ReplicaOutcome out = lns_loop(instance, params, hooks, resolve_task(instance, params, hooks),
                                std::move(start->first),
                                params.iteration_seed.value_or(params.seed), clock, nullptr);
  log.improvements.insert(log.improvements.end(), out.events.begin(), out.events.end());
  log.npo_total = out.npo;
  log.dropped_tasks = out.dropped;
  return finish(std::move(out.best), std::move(log), out.termination, out.weights);
}

RunResult run_drop_lns(const Instance& instance, const RunParams& params, const RunHooks& hooks) {
  check_params(params);
  const RunClock clock;
  auto start = start_run(instance, params, hooks, clock);
  if (!start) return unsolved(params);

  const TaskFunction task = resolve_task(instance, params, hooks);
  const std::uint64_t stream_seed = params.iteration_seed.value_or(params.seed);
  const std::size_t capacity =
      static_cast<std::size_t>(params.queue_capacity > 0 ? params.queue_capacity : 2 * params.threads);
  const auto deadline = clock.deadline(params.time_budget);

  // Guarded by main_mu: best-known solution, weights, log, first error.
  std::mutex main_mu;
  Solution best = std::move(start->first);
  std::uint64_t best_serial = 0;
  HeuristicWeights weights;
  weights.gamma = params.gamma;
  RunEventLog log;
  log.budget = params.time_budget;
  log.improvements.push_back(start->second);
  std::exception_ptr error;

  // Guarded by task_mu: the task queue and its bookkeeping. Descriptors only
  // carry the serial that seeds the task's random stream.
  struct TaskDescriptor {
    std::uint64_t serial;
  };
  std::mutex task_mu;
  std::condition_variable worker_cv, main_cv;
  std::deque<TaskDescriptor> queue;
  bool stop = false;
  std::uint64_t issued = 0, finished = 0;

  const auto worker = [&] {
    TabuState tabu;
    std::uint64_t tabu_base = 0;  // best_serial the tabu set was built against
    for (;;) {
      TaskDescriptor descriptor{};
      {
        std::unique_lock lock(task_mu);
        worker_cv.wait(lock, [&] { return stop || !queue.empty(); });
        if (stop) return;
        descriptor = queue.front();
        queue.pop_front();
      }
      main_cv.notify_one();

      bool failed = false;
      try {
        Solution snapshot;
        HeuristicWeights local;
        std::uint64_t parent = 0;
        {
          std::lock_guard lock(main_mu);
          snapshot = best;
          local = weights;
          parent = best_serial;
        }
        // Any install since this worker's last task resets its tabu set.
        if (parent != tabu_base) {
          tabu.clear();
          tabu_base = parent;
        }
        Rng rng = make_stream(stream_seed, descriptor.serial);
        TaskReport report = task(snapshot, local, rng, tabu);
        const DestroyHeuristic h = report.heuristic;

        std::lock_guard lock(main_mu);
        const bool late = clock.elapsed() > params.time_budget;
        if (!report.success) {
          weights[h] = update_weight_failure(local, h)[h];
          late ? ++log.dropped_tasks : ++log.npo_total;
        } else if (late) {
          ++log.dropped_tasks;
        } else {
          ++log.npo_total;
          weights[h] = update_weight_success(local, h, static_cast<double>(report.improvement))[h];
          if (report.solution.soc() < best.soc()) {
            check_install(instance, report.solution, params);
            const ImprovementEvent event =
                make_event(instance, report.solution, clock.elapsed(), descriptor.serial, parent);
            log.improvements.push_back(event);
            best = std::move(report.solution);
            best_serial = descriptor.serial;
            if (hooks.on_install) hooks.on_install(best, event);
          }
        }
      } catch (...) {
        std::lock_guard lock(main_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
      {
        std::lock_guard lock(task_mu);
        ++finished;
        if (failed) stop = true;
      }
      main_cv.notify_one();
      if (failed) worker_cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(params.threads);
  for (int i = 0; i < params.threads; ++i) pool.emplace_back(worker);

  Termination termination = Termination::budget;
  {
    std::unique_lock lock(task_mu);
    const auto capped = [&] { return params.iteration_cap && issued >= *params.iteration_cap; };
    for (;;) {
      if (stop || RunClock::clock::now() >= deadline) break;
      if (capped() && finished >= *params.iteration_cap) {
        termination = Termination::iteration_cap;
        break;
      }
      while (!capped() && queue.size() < capacity) {
        queue.push_back({++issued});
        worker_cv.notify_one();
      }
      main_cv.wait_until(lock, deadline, [&] {
        return stop || (!capped() && queue.size() < capacity) ||
               (capped() && finished >= *params.iteration_cap);
      });
    }
    stop = true;
    queue.clear();
  }
  worker_cv.notify_all();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  return finish(std::move(best), std::move(log), termination, weights);
}

RunResult run_sync_lns(const Instance& instance, const RunParams& params, const RunHooks& hooks) {
  check_params(params);
  const RunClock clock;
  auto start = start_run(instance, params, hooks, clock);
  if (!start) return unsolved(params);

  const TaskFunction task = resolve_task(instance, params, hooks);
  const std::uint64_t stream_seed = params.iteration_seed.value_or(params.seed);
  const int m = params.threads;

  Solution best = std::move(start->first);
  std::uint64_t best_serial = 0;
  HeuristicWeights weights;
  weights.gamma = params.gamma;
  RunEventLog log;
  log.budget = params.time_budget;
  log.improvements.push_back(start->second);

  struct Slot {
    TabuState tabu;
    std::uint64_t serial = 0;
    bool active = false;
    TaskReport report;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(m);

  // Round barrier: the coordinator bumps `round` and waits for `pending` to
  // reach zero; workers only read best/weights while a round is open.
  std::mutex pool_mu;
  std::condition_variable start_cv, done_cv;
  std::uint64_t round = 0;
  int pending = 0;
  bool shutdown = false;

  const auto worker = [&](int index) {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lock(pool_mu);
        start_cv.wait(lock, [&] { return shutdown || round != seen; });
        if (shutdown) return;
        seen = round;
      }
      Slot& slot = slots[index];
      if (slot.active) {
        try {
          Rng rng = make_stream(stream_seed, slot.serial);
          slot.report = task(best, weights, rng, slot.tabu);
        } catch (...) {
          slot.error = std::current_exception();
        }
      }
      std::lock_guard lock(pool_mu);
      if (--pending == 0) done_cv.notify_one();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(m);
  for (int i = 0; i < m; ++i) pool.emplace_back(worker, i);

  Termination termination = Termination::budget;
  std::uint64_t issued = 0;
  std::exception_ptr error;
  for (;;) {
    if (params.iteration_cap && issued >= *params.iteration_cap) {
      termination = Termination::iteration_cap;
      break;
    }
    if (clock.elapsed() >= params.time_budget) break;

    const int width = params.iteration_cap
                          ? static_cast<int>(std::min<std::uint64_t>(m, *params.iteration_cap - issued))
                          : m;
    for (int j = 0; j < m; ++j) {
      slots[j].active = j < width;
      slots[j].serial = issued + j + 1;
      slots[j].report = TaskReport{};
    }
    {
      std::unique_lock lock(pool_mu);
      pending = m;
      ++round;
      start_cv.notify_all();
      done_cv.wait(lock, [&] { return pending == 0; });
    }
    issued += width;
    for (int j = 0; j < width; ++j)
      if (slots[j].error && !error) error = slots[j].error;
    if (error) break;

    if (clock.elapsed() > params.time_budget) {
      log.dropped_tasks += width;
      break;
    }
    log.npo_total += width;

    int winner = -1;
    for (int j = 0; j < width; ++j) {
      const TaskReport& r = slots[j].report;
      if (r.success && (winner < 0 || r.solution.soc() < slots[winner].report.solution.soc())) winner = j;
    }
    if (winner >= 0) {
      TaskReport& r = slots[winner].report;
      const double gain = static_cast<double>(best.soc() - r.solution.soc());
      weights = update_weight_success(weights, r.heuristic, gain);
      if (r.solution.soc() < best.soc()) {
        check_install(instance, r.solution, params);
        const ImprovementEvent event =
            make_event(instance, r.solution, clock.elapsed(), slots[winner].serial, best_serial);
        log.improvements.push_back(event);
        best = std::move(r.solution);
        best_serial = slots[winner].serial;
        for (Slot& slot : slots) slot.tabu.clear();
        if (hooks.on_install) hooks.on_install(best, event);
      }
    } else {
      // No improvement this round: decay the heuristic of the cheapest
      // complete (non-improving) repair, or of slot 0 if nothing repaired.
      int loser = 0;
      for (int j = 0; j < width; ++j) {
        const auto& soc = slots[j].report.repaired_soc;
        const auto& current = slots[loser].report.repaired_soc;
        if (soc && (!current || *soc < *current)) loser = j;
      }
      weights = update_weight_failure(weights, slots[loser].report.heuristic);
    }
  }

  {
    std::lock_guard lock(pool_mu);
    shutdown = true;
  }
  start_cv.notify_all();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  return finish(std::move(best), std::move(log), termination, weights);
}

RunResult run_deta_lns(const Instance& instance, const RunParams& params, const RunHooks& hooks) {
  check_params(params);
  const RunClock clock;
  auto start = start_run(instance, params, hooks, clock);
  if (!start) return unsolved(params);

  const TaskFunction task = resolve_task(instance, params, hooks);
  const int m = params.threads;
  std::vector<ReplicaOutcome> outcomes(m);
  std::vector<std::exception_ptr> errors(m);
  std::mutex hook_mu;

  std::vector<std::thread> pool;
  pool.reserve(m);
  for (int r = 0; r < m; ++r) {
    pool.emplace_back([&, r] {
      try {
        outcomes[r] = lns_loop(instance, params, hooks, task, start->first, replica_seed(params, r),
                               clock, &hook_mu);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  int winner = 0;
  for (int r = 1; r < m; ++r)
    if (outcomes[r].best.soc() < outcomes[winner].best.soc()) winner = r;

  RunEventLog log;
  log.budget = params.time_budget;
  log.improvements.push_back(start->second);
  ReplicaOutcome& best = outcomes[winner];
  log.improvements.insert(log.improvements.end(), best.events.begin(), best.events.end());
  for (const ReplicaOutcome& o : outcomes) {
    log.per_thread_npo.push_back(o.npo);
    log.npo_total += o.npo;
    log.dropped_tasks += o.dropped;
  }
  return finish(std::move(best.best), std::move(log), best.termination, best.weights);
}

RunResult run_engine(Algorithm algorithm, const Instance& instance, const RunParams& params,
                     const RunHooks& hooks) {
  switch (algorithm) {
    case Algorithm::sequential: return run_sequential_lns(instance, params, hooks);
    case Algorithm::drop: return run_drop_lns(instance, params, hooks);
    case Algorithm::sync: return run_sync_lns(instance, params, hooks);
    case Algorithm::deta: return run_deta_lns(instance, params, hooks);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace mapf
