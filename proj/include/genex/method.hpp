#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace genex {

/// One composition in a linear combination: weight `b` times
/// S_{a_m h} o ... o S_{a_1 h}. Stages are stored in application order.
struct Term {
  double weight = 0.0;
  std::vector<double> stages;

  bool operator==(const Term&) const = default;
};

/// A linear combination of compositions of a basic second-order map.
///
/// Terms may have different stage counts: extrapolation methods use m_i
/// equal sub-steps in term i, the generalized families use a fixed m.
struct MethodSpec {
  std::string name;
  int order = 2;
  std::vector<Term> terms;
  std::optional<int> pseudo_symplectic_order;

  std::size_t branch_count() const noexcept { return terms.size(); }
  std::size_t max_stages() const noexcept;
  std::size_t total_stages() const noexcept;

  bool operator==(const MethodSpec&) const = default;
};

/// Default tolerance for the consistency sums of built-in methods.
inline constexpr double kConsistencyTolerance = 1e-12;

/// Throws ParseError (line 0) unless sum(b) = 1 and every stage vector sums
/// to 1 within `tolerance`, and the method has at least one nonempty term.
void validate(const MethodSpec& method, double tolerance = kConsistencyTolerance);

}  // namespace genex
