#pragma once

namespace genex {

/// Kahan compensated accumulator for a single double.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) noexcept {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  double value() const noexcept { return sum - compensation; }
};

}  // namespace genex
