#include "genex/bench.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "genex/errors.hpp"

namespace genex {
namespace {

std::vector<double> sample_times(const RunResult& result) {
  std::vector<double> t;
  t.reserve(result.samples.size());
  for (const auto& s : result.samples) t.push_back(s.t);
  return t;
}

double relative_error(const Vector& exact, const Vector& x) {
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double diff = exact[c] - x[c];
    num += diff * diff;
    den += x[c] * x[c];
  }
  return std::sqrt(num) / std::sqrt(den);
}

}  // namespace

double max_relative_error(const RunResult& result, const Problem& problem) {
  if (result.samples.empty()) throw ConfigError("run has no samples");
  const auto times = sample_times(result);
  const auto exact = problem.reference(times);
  double worst = 0.0;
  for (std::size_t n = 0; n < result.samples.size(); ++n)
    worst = std::max(worst, relative_error(exact[n], result.samples[n].x));
  return worst;
}

double tail_relative_error(const RunResult& result, const Problem& problem) {
  if (result.samples.empty()) throw ConfigError("run has no samples");
  const std::size_t last = result.samples.size() - 1;
  const auto first = static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(last)));
  std::vector<double> times;
  for (std::size_t n = first; n <= last; ++n) times.push_back(result.samples[n].t);
  const auto exact = problem.reference(times);
  double sum = 0.0;
  for (std::size_t n = first; n <= last; ++n) sum += relative_error(exact[n - first], result.samples[n].x);
  return sum / static_cast<double>(last - first + 1);
}

double kepler_phase_error(const RunResult& result, double eccentricity) {
  return max_relative_error(result, Kepler(eccentricity));
}

double lv_tail_error(const RunResult& result, const LotkaVolterra& problem) {
  return tail_relative_error(result, problem);
}

std::vector<std::pair<double, double>> invariant_drift(const RunResult& result, const Problem& problem) {
  std::vector<std::pair<double, double>> out;
  if (result.samples.empty()) return out;
  const double c0 = problem.invariant(result.samples.front().x);
  out.reserve(result.samples.size());
  for (const auto& s : result.samples) out.emplace_back(s.t, std::abs((c0 - problem.invariant(s.x)) / c0));
  return out;
}

std::string error_metric_name(const Problem& problem) {
  return problem.name() == "kepler" ? "phase_error" : "tail_error";
}

double error_metric(const RunResult& result, const Problem& problem) {
  return problem.name() == "kepler" ? max_relative_error(result, problem) : tail_relative_error(result, problem);
}

double fit_log_slope(const std::vector<double>& step_sizes, const std::vector<double>& errors) {
  const std::size_t n = step_sizes.size();
  if (n < 2 || errors.size() != n) throw ConfigError("slope fit needs at least two (h, error) pairs");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(step_sizes[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(step_sizes[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

OrderFit empirical_order(const MethodSpec& method, const Problem& problem, double t_final,
                         const std::vector<std::int64_t>& step_counts, std::int64_t period,
                         const RunOptions& options) {
  OrderFit fit;
  const auto scheme = problem.make_scheme();
  const State x0 = problem.initial_state();
  for (auto n : step_counts) {
    const double h = t_final / static_cast<double>(n);
    const auto result = run(method, *scheme, x0, h, n, period, {}, options);
    fit.step_sizes.push_back(h);
    fit.errors.push_back(error_metric(result, problem));
  }
  fit.slope = fit_log_slope(fit.step_sizes, fit.errors);
  return fit;
}

OrderFixture order_fixture(const MethodSpec& method, const Problem& problem) {
  const bool kepler = problem.name() == "kepler";
  const std::string& name = method.name;
  std::int64_t base = 0;
  if (kepler) {
    if (name == "psi6-k5-ps9") base = 10;
    else if (name == "psi8-k4") base = 2;
  } else {
    if (name == "psi6-k5-ps9") base = 16;
    else if (name == "psi6-extrap") base = 12;
  }
  if (base == 0) {
    switch (method.order) {
      case 2: base = 16; break;
      case 4: base = kepler ? 16 : 32; break;
      case 6: base = kepler ? 6 : 12; break;
      default: base = kepler ? 3 : 4; break;
    }
  }

  OrderFixture fixture;
  fixture.t_final = kepler ? std::numbers::pi : 6.28;
  for (int i = 0; i < 5; ++i) fixture.step_counts.push_back(base << i);
  const double order = method.order;
  if (method.order == 2) {
    fixture.min_slope = order - 0.2;
    fixture.max_slope = order + 0.2;
  } else if (method.order >= 8) {
    // Extrapolation of order 8 shows super-convergence (about 8.4).
    fixture.min_slope = order - 0.5;
    fixture.max_slope = std::numeric_limits<double>::infinity();
  } else {
    fixture.min_slope = order - 0.3;
    fixture.max_slope = order + 0.3;
  }
  return fixture;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool header) {
  if (header) out << kCsvHeader << '\n';
  char h[40], v[40];
  for (const auto& r : rows) {
    std::snprintf(h, sizeof h, "%.17g", r.h);
    std::snprintf(v, sizeof v, "%.17g", r.value);
    out << r.method << ',' << r.problem << ',' << r.order << ',' << r.steps << ',' << h << ',' << r.period << ','
        << r.evals_per_proc << ',' << r.evals_total << ',' << r.metric << ',' << v << '\n';
  }
}

CsvRow make_row(const MethodSpec& method, const Problem& problem, const RunResult& result) {
  CsvRow row;
  row.method = method.name;
  row.problem = std::string(problem.name());
  row.order = method.order;
  row.steps = result.steps;
  row.h = result.h;
  row.period = result.period;
  row.evals_per_proc = result.evals_per_processor;
  row.evals_total = result.evals_total;
  return row;
}

std::vector<CsvRow> efficiency_sweep(const std::vector<MethodSpec>& methods, const Problem& problem,
                                     double t_final, const std::vector<std::int64_t>& step_counts,
                                     std::int64_t period) {
  std::vector<CsvRow> rows;
  const auto scheme = problem.make_scheme();
  const State x0 = problem.initial_state();
  for (const auto& method : methods) {
    for (auto n : step_counts) {
      const auto result = run(method, *scheme, x0, t_final / static_cast<double>(n), n, period);
      auto row = make_row(method, problem, result);
      row.metric = error_metric_name(problem);
      row.value = error_metric(result, problem);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace genex
