#include "genex/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "genex/errors.hpp"

namespace genex {

StepSequence::StepSequence(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty()) throw InvalidSequenceError("step sequence is empty");
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (m_[i] < 1) throw InvalidSequenceError("step sequence entries must be >= 1");
    if (i > 0 && m_[i] <= m_[i - 1])
      throw InvalidSequenceError("step sequence must be strictly increasing (entry " + std::to_string(i + 1) +
                                 ")");
  }
}

StepSequence StepSequence::harmonic(std::size_t r) {
  std::vector<int> m(r);
  for (std::size_t i = 0; i < r; ++i) m[i] = static_cast<int>(i + 1);
  return StepSequence(std::move(m));
}

StepSequence StepSequence::romberg(std::size_t r) {
  std::vector<int> m(r);
  for (std::size_t i = 0; i < r; ++i) m[i] = 1 << i;
  return StepSequence(std::move(m));
}

StepSequence StepSequence::bulirsch(std::size_t r) {
  // 1, then 2^k and 1.5 * 2^k interleaved: 2, 3, 4, 6, 8, 12, ...
  std::vector<int> m;
  m.reserve(r);
  if (r > 0) m.push_back(1);
  for (int k = 1; m.size() < r; ++k) m.push_back(k % 2 == 1 ? 1 << ((k + 1) / 2) : 3 << (k / 2 - 1));
  return StepSequence(std::move(m));
}

std::vector<Rational> mpe_weights_exact(const std::vector<int>& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i] == m[j]) throw InvalidSequenceError("duplicate entry " + std::to_string(m[i]) + " in step sequence");

  std::vector<Rational> b(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational mi2 = Rational(m[i]) * m[i];
    Rational prod = 1;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j == i) continue;
      const Rational mj2 = Rational(m[j]) * m[j];
      prod *= mi2 / (mi2 - mj2);
    }
    b[i] = prod;
  }
  return b;
}

std::vector<Rational> mpe_weights_exact(const StepSequence& seq) { return mpe_weights_exact(seq.values()); }

std::vector<double> mpe_weights(const StepSequence& seq) {
  const auto exact = mpe_weights_exact(seq);
  std::vector<double> b;
  b.reserve(exact.size());
  for (const auto& q : exact) b.push_back(static_cast<double>(q));
  return b;
}

MethodSpec mpe_method(const StepSequence& seq, std::string name) {
  const auto b = mpe_weights(seq);
  MethodSpec method;
  method.order = static_cast<int>(2 * seq.size());
  method.name = name.empty() ? "mpe" + std::to_string(method.order) : std::move(name);
  method.pseudo_symplectic_order = method.order + 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int mi = seq[i];
    method.terms.push_back(Term{b[i], std::vector<double>(static_cast<std::size_t>(mi), 1.0 / mi)});
  }
  return method;
}

Rational leading_error_constant_exact(const StepSequence& seq) {
  Rational g = 1;
  for (int m : seq.values()) g /= Rational(m) * m;
  return seq.size() % 2 == 1 ? g : Rational(-g);
}

double leading_error_constant(const StepSequence& seq) {
  return static_cast<double>(leading_error_constant_exact(seq));
}

double efficiency(const StepSequence& seq, EvalModel model) {
  const auto& m = seq.values();
  double evals = 0.0;
  if (model == EvalModel::serial) {
    for (int mi : m) evals += mi;
  } else {
    evals = *std::max_element(m.begin(), m.end());
  }
  const double r2 = 2.0 * static_cast<double>(seq.size());
  return evals * std::pow(std::abs(leading_error_constant(seq)), 1.0 / r2);
}

}  // namespace genex
