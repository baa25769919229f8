#pragma once

#include <cstdint>
#include <vector>

#include "genex/integrator.hpp"
#include "genex/problems/problem.hpp"

namespace genex {

enum class ScheduleKind { round_robin, longest_first };

/// Assignment of branches to workers and the summation period.
struct ParallelPlan {
  std::int64_t period = 1;
  /// assignment[w] lists the branch indices run by worker w.
  std::vector<std::vector<std::size_t>> assignment;

  std::size_t workers() const noexcept { return assignment.size(); }

  /// Branch i goes to worker i mod workers.
  static ParallelPlan round_robin(std::size_t branches, std::size_t workers, std::int64_t period);
  /// Greedy longest-processing-time assignment by stage count.
  static ParallelPlan longest_first(const MethodSpec& method, std::size_t workers, std::int64_t period);
  static ParallelPlan make(ScheduleKind kind, const MethodSpec& method, std::size_t workers, std::int64_t period);
};

/// Throws ConfigError unless every branch is assigned exactly once and 1 <= workers <= branches.
void validate(const ParallelPlan& plan, std::size_t branches);

/// Runs the branches of `method` on a pool of threads with a barrier every
/// `plan.period` steps.
///
/// Each worker owns a clone of `scheme` and its assigned branches. At the
/// barrier one thread forms the weighted sum in ascending branch order with
/// the serial engine's reduction, so the trajectory is bitwise identical to
/// run(). The observer is called from that thread. Per-worker compute and
/// barrier-wait times are reported in RunResult::workers.
RunResult run_parallel(const MethodSpec& method, const BasicScheme& scheme, const State& x0, double h,
                       std::int64_t steps, const ParallelPlan& plan, const Observer& observer = {},
                       const RunOptions& options = {});

struct LatencyRow {
  std::int64_t period = 1;
  double final_error = 0.0;
  double wall_seconds = 0.0;
  double barrier_wait_seconds = 0.0;  // summed over workers
  std::vector<double> worker_barrier_wait_seconds;
};

/// One run_parallel per p; final error is |x_ref(t_f) - x_N| / |x_N|.
std::vector<LatencyRow> latency_sweep(const MethodSpec& method, const Problem& problem, double h,
                                      std::int64_t steps, const std::vector<std::int64_t>& periods,
                                      std::size_t workers = 0,
                                      ScheduleKind schedule = ScheduleKind::round_robin);

}  // namespace genex
