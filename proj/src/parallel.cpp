#include "genex/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "genex/errors.hpp"

namespace genex {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

ParallelPlan ParallelPlan::round_robin(std::size_t branches, std::size_t workers, std::int64_t period) {
  if (workers == 0) throw ConfigError("at least one worker is required");
  ParallelPlan plan;
  plan.period = period;
  plan.assignment.resize(workers);
  for (std::size_t i = 0; i < branches; ++i) plan.assignment[i % workers].push_back(i);
  return plan;
}

ParallelPlan ParallelPlan::longest_first(const MethodSpec& method, std::size_t workers, std::int64_t period) {
  if (workers == 0) throw ConfigError("at least one worker is required");
  std::vector<std::size_t> order(method.terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return method.terms[a].stages.size() > method.terms[b].stages.size();
  });
  ParallelPlan plan;
  plan.period = period;
  plan.assignment.resize(workers);
  std::vector<std::size_t> load(workers, 0);
  for (std::size_t i : order) {
    const auto w = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    plan.assignment[w].push_back(i);
    load[w] += method.terms[i].stages.size();
  }
  for (auto& branches : plan.assignment) std::sort(branches.begin(), branches.end());
  return plan;
}

ParallelPlan ParallelPlan::make(ScheduleKind kind, const MethodSpec& method, std::size_t workers,
                                std::int64_t period) {
  return kind == ScheduleKind::round_robin ? round_robin(method.terms.size(), workers, period)
                                           : longest_first(method, workers, period);
}

void validate(const ParallelPlan& plan, std::size_t branches) {
  if (plan.workers() == 0) throw ConfigError("at least one worker is required");
  if (plan.workers() > branches)
    throw ConfigError("more workers (" + std::to_string(plan.workers()) + ") than branches (" +
                      std::to_string(branches) + ")");
  std::vector<int> seen(branches, 0);
  for (const auto& list : plan.assignment)
    for (std::size_t i : list) {
      if (i >= branches) throw ConfigError("schedule names branch " + std::to_string(i) + " which does not exist");
      ++seen[i];
    }
  for (std::size_t i = 0; i < branches; ++i)
    if (seen[i] != 1) throw ConfigError("branch " + std::to_string(i) + " must be assigned exactly once");
}

RunResult run_parallel(const MethodSpec& method, const BasicScheme& scheme, const State& x0, double h,
                       std::int64_t steps, const ParallelPlan& plan, const Observer& observer,
                       const RunOptions& options) {
  detail::check_run_config(method, scheme, x0, steps, plan.period);
  validate(plan, method.terms.size());

  const std::size_t k = method.terms.size();
  const std::size_t d = x0.x.size();
  const std::size_t workers = plan.workers();
  const std::int64_t period = plan.period;
  const std::int64_t blocks = steps / period;
  const auto m_max = static_cast<std::uint64_t>(method.max_stages());
  const auto m_total = static_cast<std::uint64_t>(method.total_stages());

  RunResult result;
  result.h = h;
  result.steps = steps;
  result.period = period;
  result.evals_per_branch.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    result.evals_per_branch[i] = static_cast<std::uint64_t>(steps) * method.terms[i].stages.size();
  result.evals_per_processor = static_cast<std::uint64_t>(steps) * m_max;
  result.evals_total = static_cast<std::uint64_t>(steps) * m_total;

  State anchor = x0;
  std::vector<detail::BranchWork> work(k, detail::BranchWork(d));
  if (!options.increment_form)
    for (auto& w : work) w.delta = anchor.x;

  // First failure wins; reported after all workers have left the loop.
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  auto record_failure = [&](std::exception_ptr e) {
    std::lock_guard lock(failure_mutex);
    if (!failure) failure = e;
    failed.store(true);
  };

  auto emit = [&](std::int64_t n) {
    if (options.record_samples) result.samples.push_back(Sample{n, anchor.t, anchor.x});
    if (observer) {
      const auto un = static_cast<std::uint64_t>(n);
      observer(SummationPoint{n, anchor.t, anchor.x, un * m_max, un * m_total});
    }
  };

  std::int64_t completed_blocks = 0;
  bool stop = false;
  auto on_barrier = [&]() noexcept {
    if (failed.load()) {
      stop = true;
      return;
    }
    try {
      detail::reduce_branches(method, work, anchor.x, options);
      ++completed_blocks;
      const std::int64_t n = completed_blocks * period;
      if (!std::all_of(anchor.x.begin(), anchor.x.end(), [](double z) { return std::isfinite(z); })) {
        DivergenceError e("non-finite combined state");
        e.set_step(n);
        throw e;
      }
      anchor.t = x0.t + static_cast<double>(n) * h;
      emit(n);
    } catch (...) {
      record_failure(std::current_exception());
      stop = true;
      return;
    }
    stop = completed_blocks == blocks;
  };

  emit(0);
  std::vector<WorkerTiming> timing(workers);
  for (std::size_t w = 0; w < workers; ++w) timing[w].branches = plan.assignment[w];

  if (blocks > 0) {
    std::barrier sync(static_cast<std::ptrdiff_t>(workers), on_barrier);
    auto worker_main = [&](std::size_t w) {
      auto local = scheme.clone();
      local->reset_evaluations();
      auto& tm = timing[w];
      for (std::int64_t block = 0;; ++block) {
        const auto start = Clock::now();
        if (!failed.load()) {
          std::size_t current = 0;
          try {
            for (std::size_t i : tm.branches) {
              current = i;
              detail::advance_branch(*local, method.terms[i], anchor.x, work[i], h, period, block * period + 1, i,
                                     options.increment_form);
            }
          } catch (const DivergenceError&) {
            record_failure(std::current_exception());
          } catch (const std::exception& e) {
            record_failure(std::make_exception_ptr(WorkerError(current, e.what())));
          } catch (...) {
            record_failure(std::make_exception_ptr(WorkerError(current, "unknown exception")));
          }
        }
        const auto arrive = Clock::now();
        tm.compute_seconds += std::chrono::duration<double>(arrive - start).count();
        sync.arrive_and_wait();
        tm.barrier_wait_seconds += seconds_since(arrive);
        if (stop) break;
      }
      tm.evaluations = local->evaluations();
    };

    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker_main, w);
  }

  if (failure) std::rethrow_exception(failure);
  result.final_state = anchor;
  result.workers = std::move(timing);
  return result;
}

std::vector<LatencyRow> latency_sweep(const MethodSpec& method, const Problem& problem, double h,
                                      std::int64_t steps, const std::vector<std::int64_t>& periods,
                                      std::size_t workers, ScheduleKind schedule) {
  for (auto p : periods)
    if (p < 1 || steps % p != 0)
      throw ConfigError("N = " + std::to_string(steps) + " is not divisible by p = " + std::to_string(p));
  if (workers == 0) workers = method.terms.size();

  const auto scheme = problem.make_scheme();
  const State x0 = problem.initial_state();
  const double t_final = x0.t + static_cast<double>(steps) * h;
  const double times[] = {t_final};
  const Vector exact = problem.reference(std::span<const double>(times)).front();

  RunOptions options;
  options.record_samples = false;
  std::vector<LatencyRow> rows;
  for (auto p : periods) {
    const auto start = Clock::now();
    const auto result =
        run_parallel(method, *scheme, x0, h, steps, ParallelPlan::make(schedule, method, workers, p), {}, options);
    LatencyRow row;
    row.period = p;
    row.wall_seconds = seconds_since(start);
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < exact.size(); ++c) {
      const double diff = exact[c] - result.final_state.x[c];
      num += diff * diff;
      den += result.final_state.x[c] * result.final_state.x[c];
    }
    row.final_error = std::sqrt(num) / std::sqrt(den);
    for (const auto& w : *result.workers) {
      row.barrier_wait_seconds += w.barrier_wait_seconds;
      row.worker_barrier_wait_seconds.push_back(w.barrier_wait_seconds);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace genex
