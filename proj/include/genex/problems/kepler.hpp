#pragma once

#include <array>

#include "genex/problems/problem.hpp"

namespace genex {

/// Planar two-body state; packed as x = (q1, q2, p1, p2) inside the integrator.
struct KeplerState {
  std::array<double, 2> q{};
  std::array<double, 2> p{};

  Vector packed() const { return {q[0], q[1], p[0], p[1]}; }
  static KeplerState unpack(std::span<const double> x) { return {{x[0], x[1]}, {x[2], x[3]}}; }
};

/// Kinetic-drift-kinetic Stormer-Verlet for H = p^2/2 - mu/|q|, increment form:
///   dp = h f(q + h p / 2),  dq = h (p + dp / 2).
/// One force evaluation per call.
class KeplerScheme final : public BasicScheme {
 public:
  explicit KeplerScheme(double mu = 1.0) : mu_(mu) {}

  std::size_t dimension() const noexcept override { return 4; }
  std::unique_ptr<BasicScheme> clone() const override { return std::make_unique<KeplerScheme>(*this); }

 protected:
  void do_increment(std::span<const double> x, double h, std::span<double> dx) const override;
  /// q += h p/2; p += h f(q); q += h p/2.
  void do_advance(std::span<double> x, double h) const override;

 private:
  double mu_;
};

KeplerState kepler_basic_increment(const KeplerState& state, double h, double mu = 1.0);
double kepler_energy(const KeplerState& state, double mu = 1.0);

/// Exact solution for mu = 1, semi-major axis 1, starting at pericentre.
/// Solves Kepler's equation E - e sin E = t by Newton from E = t.
KeplerState kepler_reference(double t, double e);

class Kepler final : public Problem {
 public:
  /// Throws ConfigError unless 0 <= e < 1.
  explicit Kepler(double eccentricity = 0.25);

  double eccentricity() const noexcept { return e_; }

  std::string_view name() const noexcept override { return "kepler"; }
  State initial_state() const override;
  std::unique_ptr<BasicScheme> make_scheme() const override { return std::make_unique<KeplerScheme>(1.0); }
  double invariant(std::span<const double> x) const override;
  std::vector<Vector> reference(std::span<const double> times) const override;

 private:
  double e_;
};

}  // namespace genex
