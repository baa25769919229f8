#pragma once

#include "genex/method.hpp"

namespace genex {

/// Error-expansion polynomials of the two-stage composition S_{(1-a)h} o S_{ah}.
struct WPolynomials {
  double w31 = 0.0;
  double w41 = 0.0;
  double w51 = 0.0;
  double w52 = 0.0;
};

WPolynomials w_polynomials(double a);

/// Weighted sums G = sum_i b_i * (polynomial of term i) through h^7.
struct OrderConditionReport {
  double g00 = 0.0;
  double g31 = 0.0;
  double g41 = 0.0;
  double g51 = 0.0;
  double g52 = 0.0;
  double gt63 = 0.0;  // sum b_i w31^2
  double gt75 = 0.0;  // sum b_i w31 w41
};

/// Order-condition sums for methods made of one- and two-stage terms.
///
/// A one-stage term is the basic map itself and is evaluated at a = 1. For a
/// two-stage term the first stage fraction is `a`. Weights are not required
/// to sum to one, so the report is linear in the weights. Throws
/// UnsupportedShapeError for any term with three or more stages.
OrderConditionReport check_order4_conditions(const MethodSpec& method);

inline constexpr double kOrderConditionTolerance = 1e-10;

/// True when g00 = 1 and g31 = g41 = 0 within `tol`; with `pseudo_symplectic7`
/// additionally gt63 = gt75 = 0.
bool satisfies_order4(const OrderConditionReport& report, bool pseudo_symplectic7 = false,
                      double tol = kOrderConditionTolerance);

}  // namespace genex
