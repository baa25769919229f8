#include "genex/problems/kepler.hpp"

#include <cmath>
#include <numbers>

#include "genex/errors.hpp"

namespace genex {
namespace {

// f(q) = -mu q / |q|^3
void force(double mu, double q1, double q2, double& f1, double& f2) {
  const double r2 = q1 * q1 + q2 * q2;
  if (!(r2 > 0.0)) {
    if (r2 == 0.0) throw SingularityError("Kepler force evaluated at r = 0");
    throw DivergenceError("non-finite Kepler position");
  }
  const double r = std::sqrt(r2);
  const double s = -mu / (r2 * r);
  f1 = s * q1;
  f2 = s * q2;
}

}  // namespace

void KeplerScheme::do_increment(std::span<const double> x, double h, std::span<double> dx) const {
  double f1, f2;
  force(mu_, x[0] + 0.5 * h * x[2], x[1] + 0.5 * h * x[3], f1, f2);
  dx[2] = h * f1;
  dx[3] = h * f2;
  dx[0] = h * (x[2] + 0.5 * dx[2]);
  dx[1] = h * (x[3] + 0.5 * dx[3]);
}

void KeplerScheme::do_advance(std::span<double> x, double h) const {
  x[0] += 0.5 * h * x[2];
  x[1] += 0.5 * h * x[3];
  double f1, f2;
  force(mu_, x[0], x[1], f1, f2);
  x[2] += h * f1;
  x[3] += h * f2;
  x[0] += 0.5 * h * x[2];
  x[1] += 0.5 * h * x[3];
}

KeplerState kepler_basic_increment(const KeplerState& state, double h, double mu) {
  KeplerScheme scheme(mu);
  const auto dx = scheme.increment(state.packed(), h);
  return KeplerState::unpack(dx);
}

double kepler_energy(const KeplerState& s, double mu) {
  const double r = std::hypot(s.q[0], s.q[1]);
  return 0.5 * (s.p[0] * s.p[0] + s.p[1] * s.p[1]) - mu / r;
}

KeplerState kepler_reference(double t, double e) {
  if (!(e >= 0.0 && e < 1.0)) throw ReferenceError("eccentricity must lie in [0, 1)");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // Mean anomaly reduced to [0, 2 pi) so the residual tolerance is attainable for large t.
  double mean = std::fmod(t, two_pi);
  if (mean < 0.0) mean += two_pi;

  double E = mean;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const double residual = E - e * std::sin(E) - mean;
    if (std::abs(residual) <= 1e-14) {
      converged = true;
      break;
    }
    E -= residual / (1.0 - e * std::cos(E));
  }
  if (!converged) throw ReferenceError("Kepler equation did not converge for t = " + std::to_string(t));

  const double c = std::cos(E);
  const double s = std::sin(E);
  const double b = std::sqrt(1.0 - e * e);
  const double denom = 1.0 - e * c;
  return KeplerState{{c - e, b * s}, {-s / denom, b * c / denom}};
}

Kepler::Kepler(double eccentricity) : e_(eccentricity) {
  if (!(e_ >= 0.0 && e_ < 1.0)) throw ConfigError("eccentricity must lie in [0, 1)");
}

State Kepler::initial_state() const {
  return State{{1.0 - e_, 0.0, 0.0, std::sqrt((1.0 + e_) / (1.0 - e_))}, 0.0};
}

double Kepler::invariant(std::span<const double> x) const { return kepler_energy(KeplerState::unpack(x)); }

std::vector<Vector> Kepler::reference(std::span<const double> times) const {
  std::vector<Vector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(kepler_reference(t, e_).packed());
  return out;
}

}  // namespace genex
