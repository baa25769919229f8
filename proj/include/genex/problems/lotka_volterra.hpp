#pragma once

#include <map>
#include <mutex>

#include "genex/problems/problem.hpp"

namespace genex {

struct LVState {
  double u = 1.0;
  double v = 1.0;

  Vector packed() const { return {u, v}; }
};

/// Exact flows of the split system u' = u(v - 2) | v' = v(1 - u).
LVState lv_flow_a(const LVState& s, double h);
LVState lv_flow_b(const LVState& s, double h);

/// Increment of phi^A_{h/2} o phi^B_h o phi^A_{h/2}, i.e. S_h(x) - x.
class LotkaVolterraScheme final : public BasicScheme {
 public:
  std::size_t dimension() const noexcept override { return 2; }
  std::unique_ptr<BasicScheme> clone() const override { return std::make_unique<LotkaVolterraScheme>(*this); }

 protected:
  void do_increment(std::span<const double> x, double h, std::span<double> dx) const override;
  void do_advance(std::span<double> x, double h) const override;
};

LVState lv_basic_increment(const LVState& state, double h);
double lv_invariant(const LVState& state);

struct LVReferenceOptions {
  /// Successive refinements must agree to this (Euclidean norm, at every requested time).
  double tolerance = 1e-12;
  /// Largest sub-step of the first attempt.
  double initial_step = 0.02;
  int max_refinements = 10;
};

/// Reference solution by self-consistent refinement of the order-8
/// extrapolation method, integrated in long double. The sub-step is halved
/// until two successive refinements agree to `tolerance` at every requested
/// time. Throws ReferenceError if refinement stalls.
std::vector<Vector> lv_reference(std::span<const double> times, const LVReferenceOptions& options = {});
LVState lv_reference(double t, const LVReferenceOptions& options = {});

/// u(0) = v(0) = 1, I = -2. Reference values are cached per time.
class LotkaVolterra final : public Problem {
 public:
  explicit LotkaVolterra(LVReferenceOptions options = {}) : options_(options) {}

  std::string_view name() const noexcept override { return "lv"; }
  State initial_state() const override { return State{{1.0, 1.0}, 0.0}; }
  std::unique_ptr<BasicScheme> make_scheme() const override {
    return std::make_unique<LotkaVolterraScheme>();
  }
  double invariant(std::span<const double> x) const override;
  std::vector<Vector> reference(std::span<const double> times) const override;

 private:
  LVReferenceOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<double, Vector> cache_;
};

}  // namespace genex
