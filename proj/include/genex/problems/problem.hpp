#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "genex/scheme.hpp"

namespace genex {

/// A test problem: basic scheme, initial condition, conserved quantity and reference solution.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string_view name() const noexcept = 0;
  virtual State initial_state() const = 0;
  virtual std::unique_ptr<BasicScheme> make_scheme() const = 0;

  /// The conserved quantity (energy for Kepler, I for Lotka-Volterra).
  virtual double invariant(std::span<const double> x) const = 0;

  /// Reference solution at each of `times` (ascending, >= 0).
  virtual std::vector<Vector> reference(std::span<const double> times) const = 0;
};

}  // namespace genex
