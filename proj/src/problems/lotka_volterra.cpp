#include "genex/problems/lotka_volterra.hpp"

#include <algorithm>
#include <cmath>

#include "genex/coefficients.hpp"
#include "genex/errors.hpp"

namespace genex {
namespace {

double checked_exp(double z) {
  const double e = std::exp(z);
  if (!std::isfinite(e)) throw DivergenceError("overflow in Lotka-Volterra flow");
  return e;
}

using Extended = long double;

// psi8 = sum_i b_i (S_{h/i})^i with the harmonic weights, in extended
// precision so refinement differences stay above roundoff out to t ~ 1e3.
struct ExtendedPsi8 {
  std::vector<Extended> weights;

  ExtendedPsi8() {
    for (const auto& b : mpe_weights_exact(StepSequence::harmonic(4))) weights.push_back(static_cast<Extended>(b));
  }

  static void basic(Extended& u, Extended& v, Extended h) {
    u *= std::exp(h / 2 * (v - 2));
    v *= std::exp(h * (1 - u));
    u *= std::exp(h / 2 * (v - 2));
  }

  void step(Extended& u, Extended& v, Extended h) const {
    Extended su = 0, sv = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const int m = static_cast<int>(i + 1);
      Extended bu = u, bv = v;
      for (int j = 0; j < m; ++j) basic(bu, bv, h / m);
      su += weights[i] * (bu - u);
      sv += weights[i] * (bv - v);
    }
    u += su;
    v += sv;
    if (!std::isfinite(u) || !std::isfinite(v)) throw ReferenceError("Lotka-Volterra reference diverged");
  }
};

// Integrates through `times` with sub-steps no longer than `max_step`.
std::vector<Vector> integrate_through(std::span<const double> times, double max_step) {
  static const ExtendedPsi8 method;
  Extended u = 1, v = 1;
  double t_prev = 0.0;
  std::vector<Vector> out;
  out.reserve(times.size());
  for (double t : times) {
    const Extended span = static_cast<Extended>(t) - static_cast<Extended>(t_prev);
    if (span > 0) {
      const auto steps = static_cast<std::int64_t>(std::ceil(static_cast<double>(span) / max_step));
      const Extended h = span / static_cast<Extended>(steps);
      for (std::int64_t n = 0; n < steps; ++n) method.step(u, v, h);
    }
    t_prev = t;
    out.push_back({static_cast<double>(u), static_cast<double>(v)});
  }
  return out;
}

}  // namespace

LVState lv_flow_a(const LVState& s, double h) { return {s.u * checked_exp(h * (s.v - 2.0)), s.v}; }

LVState lv_flow_b(const LVState& s, double h) { return {s.u, s.v * checked_exp(h * (1.0 - s.u))}; }

void LotkaVolterraScheme::do_increment(std::span<const double> x, double h, std::span<double> dx) const {
  const LVState s{x[0], x[1]};
  const LVState out = lv_flow_a(lv_flow_b(lv_flow_a(s, 0.5 * h), h), 0.5 * h);
  dx[0] = out.u - s.u;
  dx[1] = out.v - s.v;
}

void LotkaVolterraScheme::do_advance(std::span<double> x, double h) const {
  const LVState out = lv_flow_a(lv_flow_b(lv_flow_a(LVState{x[0], x[1]}, 0.5 * h), h), 0.5 * h);
  x[0] = out.u;
  x[1] = out.v;
}

LVState lv_basic_increment(const LVState& state, double h) {
  LotkaVolterraScheme scheme;
  const auto dx = scheme.increment(state.packed(), h);
  return {dx[0], dx[1]};
}

double lv_invariant(const LVState& s) { return std::log(s.u) - s.u + 2.0 * std::log(s.v) - s.v; }

std::vector<Vector> lv_reference(std::span<const double> times, const LVReferenceOptions& options) {
  if (!std::is_sorted(times.begin(), times.end())) throw ReferenceError("reference times must be ascending");
  if (!times.empty() && times.front() < 0.0) throw ReferenceError("reference times must be >= 0");

  double step = options.initial_step;
  auto coarse = integrate_through(times, step);
  double worst = 0.0;
  for (int level = 0; level < options.max_refinements; ++level) {
    step *= 0.5;
    auto fine = integrate_through(times, step);
    worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      worst = std::max(worst, std::hypot(fine[i][0] - coarse[i][0], fine[i][1] - coarse[i][1]));
    if (worst <= options.tolerance) return fine;
    coarse = std::move(fine);
  }
  throw ReferenceError("Lotka-Volterra reference did not reach tolerance (last difference " +
                       std::to_string(worst) + ")");
}

LVState lv_reference(double t, const LVReferenceOptions& options) {
  const double times[] = {t};
  const auto x = lv_reference(std::span<const double>(times), options);
  return {x[0][0], x[0][1]};
}

double LotkaVolterra::invariant(std::span<const double> x) const { return lv_invariant({x[0], x[1]}); }

std::vector<Vector> LotkaVolterra::reference(std::span<const double> times) const {
  std::lock_guard lock(mutex_);
  std::vector<double> missing;
  for (double t : times)
    if (!cache_.contains(t)) missing.push_back(t);
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  if (!missing.empty()) {
    const auto values = lv_reference(std::span<const double>(missing), options_);
    for (std::size_t i = 0; i < missing.size(); ++i) cache_.emplace(missing[i], values[i]);
  }
  std::vector<Vector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(cache_.at(t));
  return out;
}

}  // namespace genex
