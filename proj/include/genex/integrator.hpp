#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "genex/method.hpp"
#include "genex/scheme.hpp"

namespace genex {

struct RunOptions {
  /// Kahan-compensated accumulation of the weighted branch sum.
  bool compensated = true;
  /// Sum branch increments (default). When false, branches carry full states
  /// and the combination sums states directly; kept for roundoff diagnostics.
  bool increment_form = true;
  /// Keep every summation point in RunResult::samples.
  bool record_samples = true;
};

/// Combined solution at a summation point (a multiple of p steps).
struct Sample {
  std::int64_t step = 0;
  double t = 0.0;
  Vector x;

  bool operator==(const Sample&) const = default;
};

/// Passed to the observer at every summation point, including step 0.
struct SummationPoint {
  std::int64_t step = 0;
  double t = 0.0;
  std::span<const double> x;
  /// Cumulative basic-map evaluations of the busiest branch.
  std::uint64_t evals_per_processor = 0;
  /// Cumulative basic-map evaluations over all branches.
  std::uint64_t evals_total = 0;
};

using Observer = std::function<void(const SummationPoint&)>;

struct WorkerTiming {
  std::vector<std::size_t> branches;
  std::uint64_t evaluations = 0;
  double compute_seconds = 0.0;
  double barrier_wait_seconds = 0.0;
};

struct RunResult {
  double h = 0.0;
  std::int64_t steps = 0;
  std::int64_t period = 1;
  std::vector<Sample> samples;
  std::vector<std::uint64_t> evals_per_branch;
  std::uint64_t evals_per_processor = 0;
  std::uint64_t evals_total = 0;
  State final_state;
  /// Filled by the parallel engine only.
  std::optional<std::vector<WorkerTiming>> workers;
};

/// Applies `stages` to the branch increment `carried` (in place).
///
/// Stage j is evaluated at anchor + carried with sub-step stages[j] * h and
/// its increment added to `carried`. `point` and `dx` are scratch buffers of
/// the state dimension. Throws DivergenceError (stage annotated) when a
/// non-finite value appears.
void compose_into(BasicScheme& scheme, std::span<const double> stages, std::span<const double> anchor,
                  std::span<double> carried, double h, std::span<double> point, std::span<double> dx);

Vector compose_increment(BasicScheme& scheme, std::span<const double> stages, const State& anchor,
                         std::span<const double> carried, double h);

/// anchor += sum_i weights[i] * deltas[i], summed in ascending branch order.
void combine_increments(std::span<const double> weights, const std::vector<Vector>& deltas,
                        std::span<double> anchor, bool compensated);

/// One step of the linear combination: x <- x + sum_i b_i dx_i, t <- t + h.
State step_combined(const MethodSpec& method, BasicScheme& scheme, const State& state, double h,
                    const RunOptions& options = {});

/// Integrates N steps of size h, forming the weighted sum every p steps.
///
/// Between summation points each branch carries its own increment from the
/// shared anchor; the combined state exists only at multiples of p and is
/// what the observer and RunResult see. Throws ConfigError when p < 1, N < 0
/// or N is not a multiple of p, and DivergenceError annotated with step,
/// branch and stage.
RunResult run(const MethodSpec& method, BasicScheme& scheme, const State& x0, double h, std::int64_t steps,
              std::int64_t period = 1, const Observer& observer = {}, const RunOptions& options = {});

namespace detail {

void check_run_config(const MethodSpec& method, const BasicScheme& scheme, const State& x0,
                      std::int64_t steps, std::int64_t period);

/// Per-branch state between summation points; shared by the serial and parallel engines.
struct BranchWork {
  Vector delta;  // increment since the anchor, or full state when not in increment form
  Vector point;
  Vector dx;

  explicit BranchWork(std::size_t d) : delta(d, 0.0), point(d, 0.0), dx(d, 0.0) {}
};

/// Advances one branch by `period` macro-steps. `first_step` is the 1-based
/// index of the first step, used to annotate divergence.
void advance_branch(BasicScheme& scheme, const Term& term, std::span<const double> anchor, BranchWork& work,
                    double h, std::int64_t period, std::int64_t first_step, std::size_t branch,
                    bool increment_form);

/// Forms the combined state from the branch work and resets the branches.
void reduce_branches(const MethodSpec& method, std::vector<BranchWork>& work, std::span<double> anchor,
                     const RunOptions& options);

std::vector<double> weights_of(const MethodSpec& method);

}  // namespace detail

}  // namespace genex
