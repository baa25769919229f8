#include "genex/order_conditions.hpp"

#include <cmath>

#include "genex/errors.hpp"

namespace genex {

WPolynomials w_polynomials(double a) {
  const double c = 1.0 - a;
  WPolynomials w;
  w.w31 = c * c * c + a * a * a;
  w.w41 = 0.5 * a * (2.0 * a - 1.0) * c;
  w.w51 = c * c * c * c * c + a * a * a * a * a;
  w.w52 = a * (2.0 * a - 1.0) * (2.0 * a - 1.0) * (a - 1.0) / 12.0 + w.w31 / 24.0;
  return w;
}

OrderConditionReport check_order4_conditions(const MethodSpec& method) {
  OrderConditionReport r;
  for (std::size_t i = 0; i < method.terms.size(); ++i) {
    const auto& term = method.terms[i];
    double a = 1.0;
    if (term.stages.size() == 2) {
      a = term.stages[0];
    } else if (term.stages.size() != 1) {
      throw UnsupportedShapeError("order-condition check supports 1- and 2-stage terms only; term " +
                                  std::to_string(i + 1) + " of '" + method.name + "' has " +
                                  std::to_string(term.stages.size()) + " stages");
    }
    const auto w = w_polynomials(a);
    const double b = term.weight;
    r.g00 += b;
    r.g31 += b * w.w31;
    r.g41 += b * w.w41;
    r.g51 += b * w.w51;
    r.g52 += b * w.w52;
    r.gt63 += b * w.w31 * w.w31;
    r.gt75 += b * w.w31 * w.w41;
  }
  return r;
}

bool satisfies_order4(const OrderConditionReport& report, bool pseudo_symplectic7, double tol) {
  bool ok = std::abs(report.g00 - 1.0) <= tol && std::abs(report.g31) <= tol && std::abs(report.g41) <= tol;
  if (pseudo_symplectic7) ok = ok && std::abs(report.gt63) <= tol && std::abs(report.gt75) <= tol;
  return ok;
}

}  // namespace genex
