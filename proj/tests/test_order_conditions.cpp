#include <doctest.h>

#include <cmath>
#include <random>

#include "genex/catalog.hpp"
#include "genex/errors.hpp"
#include "genex/order_conditions.hpp"

using namespace genex;

TEST_CASE("w polynomials at special points") {
  const auto half = w_polynomials(0.5);
  CHECK(half.w31 == 0.25);
  CHECK(half.w41 == 0.0);
  CHECK(half.w51 == 1.0 / 16.0);
  CHECK(half.w52 == doctest::Approx(1.0 / 96.0).epsilon(1e-15));
  for (double a : {0.0, 1.0}) {
    const auto w = w_polynomials(a);
    CHECK(w.w31 == 1.0);
    CHECK(w.w41 == 0.0);
    CHECK(w.w51 == 1.0);
    CHECK(w.w52 == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  }
}

TEST_CASE("w31 and w51 are symmetric under a -> 1-a, w41 is odd") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const auto w = w_polynomials(a);
    const auto r = w_polynomials(1.0 - a);
    CHECK(w.w31 == doctest::Approx(r.w31).epsilon(1e-13));
    CHECK(w.w51 == doctest::Approx(r.w51).epsilon(1e-13));
    CHECK(std::abs(w.w41 + r.w41) <= 1e-12);
  }
}

TEST_CASE("fifth-order barrier identity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto w = w_polynomials(u(rng));
    worst = std::max(worst, std::abs(2.5 * w.w31 - 4.0 * w.w51 + 60.0 * w.w52 - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("order-4 extrapolation residuals") {
  const auto r = check_order4_conditions(*find_builtin("psi4-extrap"));
  CHECK(r.g00 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(r.g31) <= 1e-14);
  CHECK(std::abs(r.g41) <= 1e-14);
  CHECK(std::abs(r.g52) <= 1e-14);
  CHECK(std::abs(r.g51 + 0.25) <= 1e-14);
  CHECK(satisfies_order4(r));
  CHECK_FALSE(satisfies_order4(r, true));
}

TEST_CASE("pseudo-symplectic order-7 residuals") {
  const auto r = check_order4_conditions(*find_builtin("psi32s"));
  CHECK(std::abs(r.g00 - 1.0) <= 1e-10);
  CHECK(std::abs(r.g31) <= 1e-10);
  CHECK(std::abs(r.g41) <= 1e-10);
  CHECK(std::abs(r.gt63) <= 1e-10);
  CHECK(std::abs(r.gt75) <= 1e-10);
  CHECK(satisfies_order4(r, true));
}

TEST_CASE("two-term order-4 method has the reported leading coefficients") {
  const auto r = check_order4_conditions(*find_builtin("psi22"));
  CHECK(satisfies_order4(r));
  CHECK(r.g51 == doctest::Approx(-0.2089).epsilon(1e-3));
  CHECK(r.g52 == doctest::Approx(0.00274).epsilon(1e-2));
}

TEST_CASE("single basic step") {
  const auto r = check_order4_conditions(MethodSpec{"s", 2, {Term{1.0, {1.0}}}, {}});
  CHECK(r.g00 == 1.0);
  CHECK(r.g31 == 1.0);
  CHECK(r.g41 == 0.0);
}

TEST_CASE("report is linear in the weights") {
  const auto m1 = *find_builtin("psi32s");
  const auto m2 = *find_builtin("psi22");
  const double alpha = 0.37, beta = -1.9;
  MethodSpec both{"both", 4, {}, {}};
  for (auto t : m1.terms) both.terms.push_back(Term{alpha * t.weight, t.stages});
  for (auto t : m2.terms) both.terms.push_back(Term{beta * t.weight, t.stages});
  const auto r1 = check_order4_conditions(m1);
  const auto r2 = check_order4_conditions(m2);
  const auto r = check_order4_conditions(both);
  auto lin = [&](double x, double y) { return alpha * x + beta * y; };
  CHECK(r.g00 == doctest::Approx(lin(r1.g00, r2.g00)));
  CHECK(std::abs(r.g31 - lin(r1.g31, r2.g31)) <= 1e-14);
  CHECK(std::abs(r.g41 - lin(r1.g41, r2.g41)) <= 1e-14);
  CHECK(r.g51 == doctest::Approx(lin(r1.g51, r2.g51)));
  CHECK(r.g52 == doctest::Approx(lin(r1.g52, r2.g52)));
  CHECK(std::abs(r.gt63 - lin(r1.gt63, r2.gt63)) <= 1e-14);
  CHECK(std::abs(r.gt75 - lin(r1.gt75, r2.gt75)) <= 1e-14);
}

TEST_CASE("three-stage terms are rejected") {
  CHECK_THROWS_AS(check_order4_conditions(*find_builtin("psi6-k5-ps9")), UnsupportedShapeError);
  CHECK_THROWS_AS(check_order4_conditions(*find_builtin("psi6-extrap")), UnsupportedShapeError);
}
