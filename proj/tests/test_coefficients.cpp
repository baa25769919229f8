#include <doctest.h>

#include <cmath>

#include "genex/catalog.hpp"
#include "genex/coefficients.hpp"
#include "genex/errors.hpp"

using namespace genex;

namespace {

// Gauss-Jordan on sum_i b_i m_i^(-2l) = delta_l0, l = 0..r-1.
std::vector<Rational> solve_weights(const std::vector<int>& m) {
  const std::size_t r = m.size();
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r + 1));
  for (std::size_t l = 0; l < r; ++l) {
    for (std::size_t i = 0; i < r; ++i) {
      Rational v = 1;
      for (std::size_t k = 0; k < l; ++k) v /= Rational(m[i] * m[i]);
      a[l][i] = v;
    }
    a[l][r] = l == 0 ? 1 : 0;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t row = 0; row < r; ++row) {
      if (row == c || a[row][c] == 0) continue;
      const Rational f = a[row][c] / a[c][c];
      for (std::size_t k = c; k <= r; ++k) a[row][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> b(r);
  for (std::size_t i = 0; i < r; ++i) b[i] = a[i][r] / a[i][i];
  return b;
}

Rational q(long n, long d) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("step sequences") {
  CHECK(StepSequence::harmonic(4).values() == std::vector<int>{1, 2, 3, 4});
  CHECK(StepSequence::romberg(4).values() == std::vector<int>{1, 2, 4, 8});
  CHECK(StepSequence::bulirsch(10).values() == std::vector<int>{1, 2, 3, 4, 6, 8, 12, 16, 24, 32});
  CHECK_THROWS_AS(StepSequence({1, 1}), InvalidSequenceError);
  CHECK_THROWS_AS(StepSequence({2, 1}), InvalidSequenceError);
  CHECK_THROWS_AS(StepSequence({0, 1}), InvalidSequenceError);
  CHECK_THROWS_AS(StepSequence(std::vector<int>{}), InvalidSequenceError);
  CHECK_THROWS_AS(mpe_weights_exact(std::vector<int>{1, 2, 2}), InvalidSequenceError);
}

TEST_CASE("published extrapolation weights") {
  CHECK(mpe_weights_exact(StepSequence{1}) == std::vector<Rational>{1});
  CHECK(mpe_weights_exact(StepSequence{1, 2}) == std::vector<Rational>{q(-1, 3), q(4, 3)});
  CHECK(mpe_weights_exact(StepSequence{1, 2, 3}) == std::vector<Rational>{q(1, 24), q(-16, 15), q(81, 40)});
  CHECK(mpe_weights_exact(StepSequence{1, 2, 3, 4}) ==
        std::vector<Rational>{q(-1, 360), q(16, 45), q(-729, 280), q(1024, 315)});
}

TEST_CASE("weights match a direct solve of the moment system") {
  for (std::size_t r = 1; r <= 8; ++r) {
    for (const auto& seq : {StepSequence::harmonic(r), StepSequence::romberg(r), StepSequence::bulirsch(r)}) {
      CAPTURE(r);
      CHECK(mpe_weights_exact(seq) == solve_weights(seq.values()));
    }
  }
}

TEST_CASE("moment conditions hold exactly and G_2r is the first nonzero moment") {
  for (std::size_t r = 1; r <= 8; ++r) {
    for (const auto& seq : {StepSequence::harmonic(r), StepSequence::romberg(r), StepSequence::bulirsch(r)}) {
      const auto b = mpe_weights_exact(seq);
      for (std::size_t l = 0; l <= r; ++l) {
        Rational s = 0;
        for (std::size_t i = 0; i < r; ++i) {
          Rational t = b[i];
          for (std::size_t k = 0; k < l; ++k) t /= Rational(seq[i] * seq[i]);
          s += t;
        }
        if (l == 0) CHECK(s == 1);
        else if (l < r) CHECK(s == 0);
        else CHECK(s == leading_error_constant_exact(seq));
      }
    }
  }
}

TEST_CASE("leading error constants") {
  CHECK(leading_error_constant_exact(StepSequence{1}) == 1);
  CHECK(leading_error_constant_exact(StepSequence{1, 2}) == q(-1, 4));
  CHECK(leading_error_constant_exact(StepSequence{1, 2, 3}) == q(1, 36));
  CHECK(leading_error_constant(StepSequence{1, 2, 3}) == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
}

TEST_CASE("efficiency") {
  CHECK(efficiency(StepSequence::harmonic(2), EvalModel::serial) ==
        doctest::Approx(3.0 * std::pow(0.25, 0.25)).epsilon(1e-14));
  CHECK(efficiency(StepSequence::harmonic(2), EvalModel::parallel) ==
        doctest::Approx(2.0 * std::pow(0.25, 0.25)).epsilon(1e-14));
  CHECK(efficiency(StepSequence{1}, EvalModel::serial) == 1.0);
  CHECK(efficiency(StepSequence{1}, EvalModel::parallel) == 1.0);
  for (std::size_t r = 2; r <= 5; ++r) {
    CAPTURE(r);
    const double h = efficiency(StepSequence::harmonic(r), EvalModel::serial);
    const double b = efficiency(StepSequence::bulirsch(r), EvalModel::serial);
    const double ro = efficiency(StepSequence::romberg(r), EvalModel::serial);
    CHECK(h <= b);
    CHECK(b <= ro);
  }
}

TEST_CASE("mpe_method builds m_i equal sub-steps per term") {
  const auto m = mpe_method(StepSequence{1, 2, 3});
  REQUIRE(m.terms.size() == 3);
  CHECK(m.order == 6);
  CHECK(m.terms[0] == Term{1.0 / 24.0, {1.0}});
  CHECK(m.terms[1].stages == std::vector<double>{0.5, 0.5});
  CHECK(m.terms[2].weight == 81.0 / 40.0);
  CHECK(m.terms[2].stages == std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(mpe_method(StepSequence{1}).terms == std::vector<Term>{Term{1.0, {1.0}}});

  const auto m4 = mpe_method(StepSequence{1, 2});
  CHECK(m4.terms == std::vector<Term>{Term{-1.0 / 3.0, {1.0}}, Term{4.0 / 3.0, {0.5, 0.5}}});
}

TEST_CASE("catalog") {
  const auto& cat = builtin_catalog();
  for (const auto& m : cat) {
    CAPTURE(m.name);
    CHECK_NOTHROW(validate(m));
  }
  CHECK(find_builtin("psi4-extrap")->terms == mpe_method(StepSequence{1, 2}).terms);
  CHECK_FALSE(find_builtin("nope").has_value());

  const auto s = *find_builtin("psi32s");
  CHECK(s.pseudo_symplectic_order == 7);
  CHECK(s.terms[2].weight == 1.0 - 0.09012936855999465 - -1.8742613286568583);

  const auto k4 = *find_builtin("psi8-k4");
  CHECK(k4.terms.size() == 4);
  for (const auto& t : k4.terms) {
    CHECK(t.stages.size() == 5);
    double sum = 0;
    for (double a : t.stages) sum += a;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  CHECK(find_builtin("psi6-k5-ps9")->pseudo_symplectic_order == 9);
  CHECK(find_builtin("psi6-k5-ps9")->max_stages() == 3);
  CHECK(find_builtin("psi6-k5-ps9")->total_stages() == 15);
}

TEST_CASE("validate rejects inconsistent methods") {
  CHECK_THROWS_AS(validate(MethodSpec{"x", 2, {Term{0.9, {1.0}}}, {}}), ParseError);
  CHECK_THROWS_AS(validate(MethodSpec{"x", 2, {Term{1.0, {0.5, 0.4}}}, {}}), ParseError);
  CHECK_THROWS_AS(validate(MethodSpec{"x", 2, {}, {}}), ParseError);
  CHECK_THROWS_AS(validate(MethodSpec{"x", 2, {Term{1.0, {}}}, {}}), ParseError);
}
