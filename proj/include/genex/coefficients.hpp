#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "genex/method.hpp"

namespace genex {

using Rational = boost::multiprecision::cpp_rational;

/// Sub-step counts m_1 < m_2 < ... of a multi-product expansion.
class StepSequence {
 public:
  /// Throws InvalidSequenceError unless entries are >= 1 and strictly increasing.
  explicit StepSequence(std::vector<int> m);
  StepSequence(std::initializer_list<int> m) : StepSequence(std::vector<int>(m)) {}

  static StepSequence harmonic(std::size_t r);   // 1, 2, 3, ...
  static StepSequence romberg(std::size_t r);    // 1, 2, 4, 8, ...
  static StepSequence bulirsch(std::size_t r);   // 1, 2, 3, 4, 6, 8, 12, ...

  const std::vector<int>& values() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  int operator[](std::size_t i) const { return m_[i]; }

 private:
  std::vector<int> m_;
};

/// Weights b_i = prod_{j != i} m_i^2 / (m_i^2 - m_j^2), exact.
std::vector<Rational> mpe_weights_exact(const StepSequence& seq);
std::vector<double> mpe_weights(const StepSequence& seq);

/// Weights checked entry-by-entry for duplicates; used by callers holding raw lists.
std::vector<Rational> mpe_weights_exact(const std::vector<int>& m);

/// Extrapolation method of order 2r: term i is m_i copies of S_{h/m_i}.
MethodSpec mpe_method(const StepSequence& seq, std::string name = {});

/// G_2r = (-1)^(r-1) prod_j 1/m_j^2.
Rational leading_error_constant_exact(const StepSequence& seq);
double leading_error_constant(const StepSequence& seq);

enum class EvalModel { serial, parallel };

/// E_f = n_s |G_2r|^(1/2r); n_s = sum m_i (serial) or max m_i (parallel).
double efficiency(const StepSequence& seq, EvalModel model);

}  // namespace genex
