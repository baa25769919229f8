#include <doctest.h>

#include <cmath>
#include <sstream>

#include "genex/bench.hpp"
#include "genex/catalog.hpp"
#include "genex/errors.hpp"

using namespace genex;

namespace {

RunResult exact_kepler(double e, int n, double h) {
  RunResult r;
  r.h = h;
  r.steps = n;
  for (int i = 0; i <= n; ++i) r.samples.push_back(Sample{i, i * h, kepler_reference(i * h, e).packed()});
  return r;
}

RunResult run_on(const char* method, const Problem& p, double tf, std::int64_t n, std::int64_t period = 1) {
  auto s = p.make_scheme();
  return run(*find_builtin(method), *s, p.initial_state(), tf / static_cast<double>(n), n, period);
}

// Straightforward order-4 extrapolation: full states, no increments, no compensation.
double naive_psi4_phase_error(double tf, int n) {
  KeplerScheme s;
  const double h = tf / n;
  Vector x = kepler_reference(0.0, 0.25).packed();
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    Vector a = x, b = x;
    s.advance(a, h);
    s.advance(b, h / 2);
    s.advance(b, h / 2);
    for (int c = 0; c < 4; ++c) x[c] = -a[c] / 3.0 + 4.0 * b[c] / 3.0;
    const auto ref = kepler_reference(i * h, 0.25).packed();
    double num = 0, den = 0;
    for (int c = 0; c < 4; ++c) {
      num += (ref[c] - x[c]) * (ref[c] - x[c]);
      den += x[c] * x[c];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

}  // namespace

TEST_CASE("metrics vanish on the exact trajectory") {
  const auto r = exact_kepler(0.25, 50, 0.1);
  CHECK(kepler_phase_error(r, 0.25) == 0.0);
  for (const auto& [t, d] : invariant_drift(r, Kepler(0.25))) CHECK(d <= 1e-14);

  LotkaVolterra lv;
  RunResult l;
  const std::vector<double> ts{0.0, 0.5, 1.0, 1.5, 2.0};
  const auto ref = lv.reference(ts);
  for (std::size_t i = 0; i < ts.size(); ++i) l.samples.push_back(Sample{static_cast<std::int64_t>(i), ts[i], ref[i]});
  CHECK(lv_tail_error(l, lv) == 0.0);
}

TEST_CASE("tail error ignores samples before the window") {
  LotkaVolterra lv;
  auto r = run_on("psi4-extrap", lv, 6.28, 100);
  const double before = lv_tail_error(r, lv);
  for (std::size_t i = 0; i < 80; ++i) r.samples[i].x = {5.0, 5.0};
  CHECK(lv_tail_error(r, lv) == before);
  r.samples[80].x = {5.0, 5.0};
  CHECK(lv_tail_error(r, lv) != before);
}

TEST_CASE("phase error matches an independent straightforward implementation") {
  const double ours = kepler_phase_error(run_on("psi4-extrap", Kepler(0.25), 30.0, 3000), 0.25);
  const double naive = naive_psi4_phase_error(30.0, 3000);
  CHECK(std::isfinite(ours));
  CHECK(ours == doctest::Approx(naive).epsilon(1e-3));
}

TEST_CASE("phase error decreases as N doubles") {
  double prev = INFINITY;
  for (int n : {1500, 3000, 6000, 12000}) {
    const double e = kepler_phase_error(run_on("psi4-extrap", Kepler(0.25), 30.0, n), 0.25);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("order-6 tail error drops by about 2^6 per halving") {
  // N = 628 already sits at the roundoff floor (about 1e-14), so halve from N = 157.
  LotkaVolterra lv;
  const double e1 = lv_tail_error(run_on("psi6-extrap", lv, 6.28, 157), lv);
  const double e2 = lv_tail_error(run_on("psi6-extrap", lv, 6.28, 314), lv);
  CHECK(std::isfinite(e1));
  CHECK(e1 / e2 == doctest::Approx(64.0).epsilon(0.3));
}

TEST_CASE("log slope fit") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 4));
  CHECK(fit_log_slope(h, e) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("empirical order of the basic scheme") {
  Kepler k(0.25);
  const auto f = order_fixture(*find_builtin("basic"), k);
  const auto fit = empirical_order(*find_builtin("basic"), k, f.t_final, f.step_counts);
  CHECK(fit.step_sizes.size() == 5);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.1));

  LotkaVolterra lv;
  const auto g = order_fixture(*find_builtin("basic"), lv);
  CHECK(empirical_order(*find_builtin("basic"), lv, g.t_final, g.step_counts).slope ==
        doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("order-6 and order-8 extrapolation on Kepler") {
  Kepler k(0.25);
  for (const char* name : {"psi6-extrap", "psi8-extrap"}) {
    CAPTURE(name);
    const auto m = *find_builtin(name);
    const auto f = order_fixture(m, k);
    const double slope = empirical_order(m, k, f.t_final, f.step_counts).slope;
    CHECK(slope >= f.min_slope);
    CHECK(slope <= f.max_slope);
  }
}

TEST_CASE("efficiency sweep and CSV") {
  Kepler k(0.25);
  const auto rows = efficiency_sweep({*find_builtin("psi32s")}, k, 30.0, {500, 1000});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].steps == 500);
  CHECK(rows[1].steps == 1000);
  CHECK(rows[0].metric == "phase_error");
  CHECK(rows[0].evals_per_proc == 1000);
  CHECK(rows[0].evals_total == 3000);
  CHECK(rows[1].value < rows[0].value);
  CHECK(efficiency_sweep({*find_builtin("psi32s")}, k, 30.0, {500, 1000}) == rows);

  std::ostringstream out;
  write_csv(out, {rows[0]});
  std::ostringstream expect;
  char value[64];
  std::snprintf(value, sizeof value, "%.17g", rows[0].value);
  expect << kCsvHeader << "\npsi32s,kepler,4,500,0.059999999999999998,1,1000,3000,phase_error," << value << '\n';
  CHECK(out.str() == expect.str());

  LotkaVolterra lv;
  CHECK(efficiency_sweep({*find_builtin("basic")}, lv, 6.28, {100})[0].metric == "tail_error");
}

TEST_CASE("order fixtures") {
  Kepler k(0.25);
  const auto f = order_fixture(*find_builtin("psi4-extrap"), k);
  CHECK(f.step_counts == std::vector<std::int64_t>{16, 32, 64, 128, 256});
  CHECK(f.min_slope == doctest::Approx(3.7));
  CHECK(f.max_slope == doctest::Approx(4.3));
  CHECK(order_fixture(*find_builtin("psi8-k4"), k).min_slope == doctest::Approx(7.5));
}

TEST_CASE("pseudo-symplectic order-6 method on Lotka-Volterra") {
  LotkaVolterra lv;
  // Both methods need 3 sequential evaluations per step, so equal N means equal cost per processor.
  const auto rows = efficiency_sweep({*find_builtin("psi6-extrap"), *find_builtin("psi6-k5-ps9")}, lv, 6.28,
                                     {100, 200, 400});
  REQUIRE(rows.size() == 6);
  CHECK(rows[2].evals_per_proc == rows[5].evals_per_proc);
  CHECK(rows[5].value < rows[2].value);

  auto terminal_drift = [&](const char* name) {
    return invariant_drift(run_on(name, lv, 3141.0, 31410), lv).back().second;
  };
  CHECK(terminal_drift("psi6-k5-ps9") < terminal_drift("psi6-extrap"));
}
