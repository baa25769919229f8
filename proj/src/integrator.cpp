#include "genex/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genex/errors.hpp"
#include "genex/kahan.hpp"

namespace genex {

void BasicScheme::do_advance(std::span<double> x, double h) const {
  Vector dx(x.size());
  do_increment(x, h, dx);
  for (std::size_t c = 0; c < x.size(); ++c) x[c] += dx[c];
}

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double z) { return std::isfinite(z); });
}

// Sum over branches in ascending index, component by component.
template <typename Get>
void weighted_sum_into(std::span<const double> weights, Get&& get, std::span<double> out, bool accumulate,
                       bool compensated) {
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (compensated) {
      CompensatedSum s;
      for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * get(i)[c];
      out[c] = accumulate ? out[c] + s.value() : s.value();
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * get(i)[c];
      out[c] = accumulate ? out[c] + s : s;
    }
  }
}

}  // namespace

void compose_into(BasicScheme& scheme, std::span<const double> stages, std::span<const double> anchor,
                  std::span<double> carried, double h, std::span<double> point, std::span<double> dx) {
  const std::size_t d = anchor.size();
  for (std::size_t j = 0; j < stages.size(); ++j) {
    for (std::size_t c = 0; c < d; ++c) point[c] = anchor[c] + carried[c];
    try {
      scheme.increment(point, stages[j] * h, dx);
    } catch (DivergenceError& e) {
      e.set_stage(j);
      throw;
    }
    for (std::size_t c = 0; c < d; ++c) carried[c] += dx[c];
    if (!all_finite(carried)) {
      DivergenceError e("non-finite increment");
      e.set_stage(j);
      throw e;
    }
  }
}

Vector compose_increment(BasicScheme& scheme, std::span<const double> stages, const State& anchor,
                         std::span<const double> carried, double h) {
  const std::size_t d = anchor.x.size();
  if (stages.empty()) throw ConfigError("composition needs at least one stage");
  if (carried.size() != d) throw ConfigError("carried increment has the wrong dimension");
  Vector out(carried.begin(), carried.end());
  Vector point(d), dx(d);
  compose_into(scheme, stages, anchor.x, out, h, point, dx);
  return out;
}

void combine_increments(std::span<const double> weights, const std::vector<Vector>& deltas,
                        std::span<double> anchor, bool compensated) {
  weighted_sum_into(
      weights, [&](std::size_t i) -> const Vector& { return deltas[i]; }, anchor, true, compensated);
}

namespace detail {

std::vector<double> weights_of(const MethodSpec& method) {
  std::vector<double> w;
  w.reserve(method.terms.size());
  for (const auto& t : method.terms) w.push_back(t.weight);
  return w;
}

void check_run_config(const MethodSpec& method, const BasicScheme& scheme, const State& x0,
                      std::int64_t steps, std::int64_t period) {
  if (period < 1) throw ConfigError("summation period p must be >= 1");
  if (steps < 0) throw ConfigError("number of steps N must be >= 0");
  if (steps % period != 0)
    throw ConfigError("N = " + std::to_string(steps) + " is not divisible by p = " + std::to_string(period));
  if (method.terms.empty()) throw ConfigError("method '" + method.name + "' has no terms");
  for (const auto& t : method.terms)
    if (t.stages.empty()) throw ConfigError("method '" + method.name + "' has an empty term");
  if (x0.x.size() != scheme.dimension())
    throw ConfigError("initial state has dimension " + std::to_string(x0.x.size()) + ", scheme expects " +
                      std::to_string(scheme.dimension()));
  if (!all_finite(x0.x)) throw ConfigError("initial state is not finite");
}

void advance_branch(BasicScheme& scheme, const Term& term, std::span<const double> anchor, BranchWork& work,
                    double h, std::int64_t period, std::int64_t first_step, std::size_t branch,
                    bool increment_form) {
  for (std::int64_t s = 0; s < period; ++s) {
    try {
      if (increment_form) {
        compose_into(scheme, term.stages, anchor, work.delta, h, work.point, work.dx);
      } else {
        for (std::size_t j = 0; j < term.stages.size(); ++j) {
          scheme.advance(work.delta, term.stages[j] * h);
          if (!all_finite(work.delta)) {
            DivergenceError e("non-finite state");
            e.set_stage(j);
            throw e;
          }
        }
      }
    } catch (DivergenceError& e) {
      e.set_branch(branch);
      e.set_step(first_step + s);
      throw;
    }
  }
}

void reduce_branches(const MethodSpec& method, std::vector<BranchWork>& work, std::span<double> anchor,
                     const RunOptions& options) {
  const auto weights = weights_of(method);
  auto get = [&](std::size_t i) -> const Vector& { return work[i].delta; };
  if (options.increment_form) {
    weighted_sum_into(weights, get, anchor, true, options.compensated);
    for (auto& w : work) std::fill(w.delta.begin(), w.delta.end(), 0.0);
  } else {
    weighted_sum_into(weights, get, anchor, false, options.compensated);
    for (auto& w : work) std::copy(anchor.begin(), anchor.end(), w.delta.begin());
  }
}

}  // namespace detail

State step_combined(const MethodSpec& method, BasicScheme& scheme, const State& state, double h,
                    const RunOptions& options) {
  detail::check_run_config(method, scheme, state, 1, 1);
  const std::size_t d = state.x.size();
  std::vector<detail::BranchWork> work(method.terms.size(), detail::BranchWork(d));
  if (!options.increment_form)
    for (auto& w : work) w.delta = state.x;
  for (std::size_t i = 0; i < method.terms.size(); ++i)
    detail::advance_branch(scheme, method.terms[i], state.x, work[i], h, 1, 1, i, options.increment_form);
  State next = state;
  detail::reduce_branches(method, work, next.x, options);
  next.t = state.t + h;
  return next;
}

RunResult run(const MethodSpec& method, BasicScheme& scheme, const State& x0, double h, std::int64_t steps,
              std::int64_t period, const Observer& observer, const RunOptions& options) {
  detail::check_run_config(method, scheme, x0, steps, period);
  const std::size_t k = method.terms.size();
  const std::size_t d = x0.x.size();
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

  auto emit = [&](std::int64_t n) {
    if (options.record_samples) result.samples.push_back(Sample{n, anchor.t, anchor.x});
    if (observer) {
      const auto un = static_cast<std::uint64_t>(n);
      observer(SummationPoint{n, anchor.t, anchor.x, un * m_max, un * m_total});
    }
  };

  emit(0);
  for (std::int64_t block = 0; block < steps / period; ++block) {
    const std::int64_t first = block * period + 1;
    for (std::size_t i = 0; i < k; ++i)
      detail::advance_branch(scheme, method.terms[i], anchor.x, work[i], h, period, first, i,
                             options.increment_form);
    detail::reduce_branches(method, work, anchor.x, options);
    const std::int64_t n = (block + 1) * period;
    if (!std::all_of(anchor.x.begin(), anchor.x.end(), [](double z) { return std::isfinite(z); })) {
      DivergenceError e("non-finite combined state");
      e.set_step(n);
      throw e;
    }
    anchor.t = x0.t + static_cast<double>(n) * h;
    emit(n);
  }
  result.final_state = anchor;
  return result;
}

}  // namespace genex
