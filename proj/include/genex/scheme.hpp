#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace genex {

using Vector = std::vector<double>;

/// A point in phase space and its time.
struct State {
  Vector x;
  double t = 0.0;

  bool operator==(const State&) const = default;
};

/// Time-symmetric second-order one-step map S_h, in increment form.
///
/// `increment` writes S_h(x) - x. Composition is done by the caller through
/// the carry rule S(x + S(x)). `advance` is the plain map x <- S_h(x), used
/// only by the non-increment summation path. Each call of either counts one
/// evaluation of the basic map.
///
/// Implementations hold no mutable state besides the counter; the parallel
/// engine gives every worker its own clone.
class BasicScheme {
 public:
  virtual ~BasicScheme() = default;

  virtual std::size_t dimension() const noexcept = 0;
  virtual std::unique_ptr<BasicScheme> clone() const = 0;

  void increment(std::span<const double> x, double h, std::span<double> dx) {
    ++evaluations_;
    do_increment(x, h, dx);
  }

  void advance(std::span<double> x, double h) {
    ++evaluations_;
    do_advance(x, h);
  }

  Vector increment(std::span<const double> x, double h) {
    Vector dx(x.size());
    increment(x, h, dx);
    return dx;
  }

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  void reset_evaluations() noexcept { evaluations_ = 0; }

 protected:
  BasicScheme() = default;
  BasicScheme(const BasicScheme&) = default;
  BasicScheme& operator=(const BasicScheme&) = default;

  virtual void do_increment(std::span<const double> x, double h, std::span<double> dx) const = 0;

  /// Default: x += increment(x, h).
  virtual void do_advance(std::span<double> x, double h) const;

 private:
  std::uint64_t evaluations_ = 0;
};

}  // namespace genex
