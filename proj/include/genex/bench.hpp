#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "genex/integrator.hpp"
#include "genex/problems/kepler.hpp"
#include "genex/problems/lotka_volterra.hpp"

namespace genex {

/// max_n |x_ref(t_n) - x_n| / |x_n| over all samples.
double max_relative_error(const RunResult& result, const Problem& problem);

/// Mean of |x_ref(t_n) - x_n| / |x_n| over sample indices floor(0.8 S)..S,
/// where S is the last sample index.
double tail_relative_error(const RunResult& result, const Problem& problem);

double kepler_phase_error(const RunResult& result, double eccentricity);
double lv_tail_error(const RunResult& result, const LotkaVolterra& problem);

/// |(C_0 - C(x_n)) / C_0| at each sample, C_0 taken from the first sample.
std::vector<std::pair<double, double>> invariant_drift(const RunResult& result, const Problem& problem);

/// The metric used for a problem in sweeps: phase error for Kepler, tail error otherwise.
std::string error_metric_name(const Problem& problem);
double error_metric(const RunResult& result, const Problem& problem);

struct OrderFit {
  double slope = 0.0;
  std::vector<double> step_sizes;
  std::vector<double> errors;
};

/// Least-squares slope of log(error) against log(h).
double fit_log_slope(const std::vector<double>& step_sizes, const std::vector<double>& errors);

/// Runs `method` for t_f / N with each N and fits the error slope.
OrderFit empirical_order(const MethodSpec& method, const Problem& problem, double t_final,
                         const std::vector<std::int64_t>& step_counts, std::int64_t period = 1,
                         const RunOptions& options = {});

/// Asymptotic step counts (4 halvings) and the accepted slope window for an
/// empirical order check. Ranges keep the smallest error well above the
/// roundoff floor of the increment path.
struct OrderFixture {
  double t_final = 0.0;
  std::vector<std::int64_t> step_counts;
  double min_slope = 0.0;
  double max_slope = 0.0;
};

/// Kepler uses t_f = pi, Lotka-Volterra t_f = 6.28. Built-in methods have
/// tuned ranges, other methods get a range chosen by design order.
OrderFixture order_fixture(const MethodSpec& method, const Problem& problem);

/// One line of the benchmark CSV.
struct CsvRow {
  std::string method;
  std::string problem;
  int order = 0;
  std::int64_t steps = 0;
  double h = 0.0;
  std::int64_t period = 1;
  std::uint64_t evals_per_proc = 0;
  std::uint64_t evals_total = 0;
  std::string metric;
  double value = 0.0;

  bool operator==(const CsvRow&) const = default;
};

inline constexpr const char* kCsvHeader = "method,problem,order,N,h,p,evals_per_proc,evals_total,metric,value";

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, bool header = true);

/// Row template filled from a finished run; metric and value left empty.
CsvRow make_row(const MethodSpec& method, const Problem& problem, const RunResult& result);

/// One row per (method, N), ordered method-major.
std::vector<CsvRow> efficiency_sweep(const std::vector<MethodSpec>& methods, const Problem& problem,
                                     double t_final, const std::vector<std::int64_t>& step_counts,
                                     std::int64_t period = 1);

}  // namespace genex
