#include "genex/method.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "genex/errors.hpp"

namespace genex {

std::size_t MethodSpec::max_stages() const noexcept {
  std::size_t m = 0;
  for (const auto& term : terms) m = std::max(m, term.stages.size());
  return m;
}

std::size_t MethodSpec::total_stages() const noexcept {
  std::size_t m = 0;
  for (const auto& term : terms) m += term.stages.size();
  return m;
}

void validate(const MethodSpec& method, double tolerance) {
  if (method.terms.empty()) throw ParseError(0, "method '" + method.name + "' has no terms");
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < method.terms.size(); ++i) {
    const auto& term = method.terms[i];
    if (term.stages.empty())
      throw ParseError(0, "method '" + method.name + "': term " + std::to_string(i + 1) + " has no stages");
    const double stage_sum = std::accumulate(term.stages.begin(), term.stages.end(), 0.0);
    if (!(std::abs(stage_sum - 1.0) <= tolerance))
      throw ParseError(0, "method '" + method.name + "': stages of term " + std::to_string(i + 1) +
                              " sum to " + std::to_string(stage_sum) + ", expected 1");
    weight_sum += term.weight;
  }
  if (!(std::abs(weight_sum - 1.0) <= tolerance))
    throw ParseError(0, "method '" + method.name + "': weights sum to " + std::to_string(weight_sum) +
                            ", expected 1");
}

}  // namespace genex
