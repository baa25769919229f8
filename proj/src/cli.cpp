#include "genex/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "genex/bench.hpp"
#include "genex/catalog.hpp"
#include "genex/errors.hpp"
#include "genex/method_io.hpp"
#include "genex/order_conditions.hpp"
#include "genex/parallel.hpp"

namespace genex::cli {
namespace {

struct RunConfig {
  std::string method = "psi4-extrap";
  std::string problem = "kepler";
  double t_final = 30.0;
  std::int64_t steps = 3000;
  std::int64_t period = 1;
  std::size_t workers = 1;
  double eccentricity = 0.25;
  std::string output = "-";
};

MethodSpec resolve_method(const std::string& name_or_file) {
  if (auto m = find_builtin(name_or_file)) return *m;
  if (std::filesystem::exists(name_or_file)) return load_method(name_or_file);
  throw ConfigError("unknown method '" + name_or_file + "' (not a built-in name or a readable file)");
}

std::unique_ptr<Problem> make_problem(const std::string& name, double eccentricity) {
  if (name == "kepler") return std::make_unique<Kepler>(eccentricity);
  if (name == "lv") return std::make_unique<LotkaVolterra>();
  throw ConfigError("unknown problem '" + name + "' (expected kepler or lv)");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the configured path, or `fallback` for "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool is_stdout() const { return stream_ != &file_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

RunResult execute(const MethodSpec& method, const Problem& problem, const RunConfig& cfg, const Observer& observer,
                  const RunOptions& options) {
  if (cfg.steps <= 0) throw ConfigError("--N must be positive");
  const double h = cfg.t_final / static_cast<double>(cfg.steps);
  const auto scheme = problem.make_scheme();
  if (cfg.workers <= 1) return run(method, *scheme, problem.initial_state(), h, cfg.steps, cfg.period, observer, options);
  return run_parallel(method, *scheme, problem.initial_state(), h, cfg.steps,
                      ParallelPlan::round_robin(method.terms.size(), cfg.workers, cfg.period), observer, options);
}

// Drift rows at every summation point plus one error-metric row.
std::vector<CsvRow> run_rows(const MethodSpec& method, const Problem& problem, const RunResult& result,
                             std::size_t drift_stride = 1) {
  std::vector<CsvRow> rows;
  const auto drift = invariant_drift(result, problem);
  const CsvRow base = make_row(method, problem, result);
  for (std::size_t i = 0; i < drift.size(); ++i) {
    if (i % drift_stride != 0 && i + 1 != drift.size()) continue;
    CsvRow row = base;
    row.metric = "invariant_drift@t=" + fmt17(drift[i].first);
    row.value = drift[i].second;
    rows.push_back(std::move(row));
  }
  CsvRow err = base;
  err.metric = error_metric_name(problem);
  err.value = error_metric(result, problem);
  rows.push_back(std::move(err));
  return rows;
}

int cmd_list(std::ostream& out) {
  out << std::left << std::setw(14) << "name" << std::setw(7) << "order" << std::setw(10) << "branches"
      << std::setw(14) << "stages" << "pseudo-symplectic" << '\n';
  for (const auto& m : builtin_catalog()) {
    std::string stages;
    for (std::size_t i = 0; i < m.terms.size(); ++i) stages += (i ? "," : "") + std::to_string(m.terms[i].stages.size());
    out << std::left << std::setw(14) << m.name << std::setw(7) << m.order << std::setw(10) << m.terms.size()
        << std::setw(14) << stages
        << (m.pseudo_symplectic_order ? std::to_string(*m.pseudo_symplectic_order) : std::string("-")) << '\n';
  }
  return kOk;
}

int cmd_check(const std::string& name, std::ostream& out) {
  const MethodSpec method = resolve_method(name);
  out << "method " << method.name << " (order " << method.order << ", " << method.terms.size() << " branches)\n";
  if (method.max_stages() <= 2) {
    const auto r = check_order4_conditions(method);
    out << std::scientific << std::setprecision(6);
    out << "  g00-1 = " << r.g00 - 1.0 << "\n  g31   = " << r.g31 << "\n  g41   = " << r.g41 << "\n  g51   = " << r.g51
        << "\n  g52   = " << r.g52 << "\n  gt63  = " << r.gt63 << "\n  gt75  = " << r.gt75 << '\n';
    out << std::defaultfloat;
    bool pass = false;
    if (method.order <= 2) {
      pass = std::abs(r.g00 - 1.0) <= kOrderConditionTolerance;
    } else if (method.order == 4) {
      const bool ps7 = method.pseudo_symplectic_order && *method.pseudo_symplectic_order >= 7;
      pass = satisfies_order4(r, ps7);
    } else {
      out << "  two-stage compositions cannot exceed order 4\n";
    }
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kCheckFailed;
  }

  bool pass = true;
  const Kepler kepler(0.25);
  const LotkaVolterra lv;
  for (const Problem* problem : {static_cast<const Problem*>(&kepler), static_cast<const Problem*>(&lv)}) {
    const auto fixture = order_fixture(method, *problem);
    const auto fit = empirical_order(method, *problem, fixture.t_final, fixture.step_counts);
    const bool ok = fit.slope >= fixture.min_slope && fit.slope <= fixture.max_slope;
    pass = pass && ok;
    out << "  " << problem->name() << ": empirical order " << std::fixed << std::setprecision(3) << fit.slope
        << std::defaultfloat << " (accepted [" << fixture.min_slope << ", " << fixture.max_slope << "]) "
        << (ok ? "ok" : "out of range") << '\n';
  }
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kOk : kCheckFailed;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MethodSpec method = resolve_method(cfg.method);
  const auto problem = make_problem(cfg.problem, cfg.eccentricity);
  const auto result = execute(method, *problem, cfg, {}, {});
  const auto rows = run_rows(method, *problem, result);
  Output sink(cfg.output, out);
  write_csv(sink.stream(), rows);
  std::ostream& summary = sink.is_stdout() ? err : out;
  summary << method.name << " on " << problem->name() << ": N=" << cfg.steps << " p=" << cfg.period
          << " evals/proc=" << result.evals_per_processor << ' ' << rows.back().metric << '='
          << fmt17(rows.back().value) << '\n';
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, const std::vector<std::int64_t>& step_counts, std::ostream& out) {
  std::vector<MethodSpec> methods;
  for (const auto& name : split_commas(cfg.method)) methods.push_back(resolve_method(name));
  const auto problem = make_problem(cfg.problem, cfg.eccentricity);
  for (auto n : step_counts)
    if (n <= 0 || n % cfg.period != 0) throw ConfigError("N = " + std::to_string(n) + " is not a positive multiple of p");
  const auto rows = efficiency_sweep(methods, *problem, cfg.t_final, step_counts, cfg.period);
  Output sink(cfg.output, out);
  write_csv(sink.stream(), rows);
  return kOk;
}

int cmd_latency(const RunConfig& cfg, const std::vector<std::int64_t>& periods, std::ostream& out,
                std::ostream& err) {
  const MethodSpec method = resolve_method(cfg.method);
  const auto problem = make_problem(cfg.problem, cfg.eccentricity);
  if (cfg.steps <= 0) throw ConfigError("--N must be positive");
  const double h = cfg.t_final / static_cast<double>(cfg.steps);
  const auto sweep = latency_sweep(method, *problem, h, cfg.steps, periods, cfg.workers);

  std::vector<CsvRow> rows;
  for (const auto& r : sweep) {
    CsvRow row;
    row.method = method.name;
    row.problem = std::string(problem->name());
    row.order = method.order;
    row.steps = cfg.steps;
    row.h = h;
    row.period = r.period;
    row.evals_per_proc = static_cast<std::uint64_t>(cfg.steps) * method.max_stages();
    row.evals_total = static_cast<std::uint64_t>(cfg.steps) * method.total_stages();
    row.metric = "final_error";
    row.value = r.final_error;
    rows.push_back(std::move(row));
  }
  Output sink(cfg.output, out);
  write_csv(sink.stream(), rows);
  // Timings vary between runs, so they stay out of the CSV.
  std::ostream& summary = sink.is_stdout() ? err : out;
  for (const auto& r : sweep) {
    summary << "p=" << r.period << " final_error=" << fmt17(r.final_error) << " wall=" << r.wall_seconds
            << "s barrier_wait=" << r.barrier_wait_seconds << "s\n";
  }
  return kOk;
}

// Desk-scale versions of the figure workloads, one CSV per figure.
int cmd_repro(const std::string& dir, std::ostream& out) {
  std::filesystem::create_directories(dir);
  const Kepler kepler(0.25);
  const LotkaVolterra lv;
  auto methods = [](std::initializer_list<const char*> names) {
    std::vector<MethodSpec> ms;
    for (auto n : names) ms.push_back(*find_builtin(n));
    return ms;
  };
  auto write = [&](const std::string& file, const std::vector<CsvRow>& rows) {
    const auto path = std::filesystem::path(dir) / file;
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    write_csv(f, rows);
    out << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
  };
  auto append = [](std::vector<CsvRow>& to, std::vector<CsvRow> from) {
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
  };
  auto long_time = [&](const MethodSpec& m, const Problem& problem, double t_final, std::int64_t steps) {
    const auto scheme = problem.make_scheme();
    const auto result = run(m, *scheme, problem.initial_state(), t_final / static_cast<double>(steps), steps);
    auto rows = run_rows(m, problem, result, static_cast<std::size_t>(steps / 250));
    rows.pop_back();  // drift only; the reference error over such spans is not part of the figure
    return rows;
  };

  {
    std::vector<CsvRow> rows;
    const auto ms = methods({"psi4-extrap", "psi22", "psi32s"});
    append(rows, efficiency_sweep(ms, kepler, 30.0, {250, 500, 1000, 2000, 4000}));
    append(rows, efficiency_sweep(ms, lv, 6.28, {32, 64, 128, 256, 512}));
    for (const auto& m : ms) {
      append(rows, long_time(m, kepler, 2513.0, 50260));
      append(rows, long_time(m, lv, 2513.0, 50260));
    }
    write("order4.csv", rows);
  }
  {
    std::vector<CsvRow> rows;
    const auto ms = methods({"psi6-extrap", "psi6-k5-ps9"});
    append(rows, efficiency_sweep(ms, kepler, 30.0, {250, 500, 1000, 2000, 4000}));
    append(rows, efficiency_sweep(ms, lv, 6.28, {25, 50, 100, 200, 400}));
    for (const auto& m : ms) {
      append(rows, long_time(m, kepler, 3141.0, 31410));
      append(rows, long_time(m, lv, 3141.0, 31410));
    }
    write("order6.csv", rows);
  }
  {
    std::vector<CsvRow> rows;
    const auto ms = methods({"psi8-extrap", "psi8-k4"});
    append(rows, efficiency_sweep(ms, kepler, 30.0, {125, 250, 500, 1000}));
    append(rows, efficiency_sweep(ms, lv, 6.28, {16, 32, 64, 128}));
    write("order8.csv", rows);
  }
  {
    std::vector<CsvRow> rows;
    for (const auto& m : methods({"psi4-extrap", "psi32s", "psi6-extrap", "psi6-k5-ps9"})) {
      for (std::int64_t n : {300, 600, 1500, 3000}) {
        const auto sweep = latency_sweep(m, kepler, 30.0 / static_cast<double>(n), n, {1, 10, n});
        for (const auto& r : sweep) {
          CsvRow row{m.name, "kepler", m.order, n, 30.0 / static_cast<double>(n), r.period,
                     static_cast<std::uint64_t>(n) * m.max_stages(), static_cast<std::uint64_t>(n) * m.total_stages(),
                     "final_error", r.final_error};
          rows.push_back(std::move(row));
        }
      }
    }
    write("latency.csv", rows);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear combinations of compositions of a second-order basic map", "genex"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string list_text;
  std::vector<std::int64_t> step_list;
  std::vector<std::int64_t> period_list;
  std::string out_dir = "repro";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--method", cfg.method, "built-in method name or coefficient file")->capture_default_str();
    sub->add_option("--problem", cfg.problem, "kepler or lv")->capture_default_str();
    sub->add_option("--tf", cfg.t_final, "final time")->capture_default_str();
    sub->add_option("--e", cfg.eccentricity, "Kepler eccentricity")->capture_default_str();
    sub->add_option("--out", cfg.output, "output CSV path, '-' for stdout")->capture_default_str();
  };

  auto* list = app.add_subcommand("list", "list built-in methods");
  auto* check = app.add_subcommand("check", "verify order conditions (2-stage) or empirical order (>= 3 stages)");
  check->add_option("--method", cfg.method, "built-in method name or coefficient file")->required();

  auto* run_cmd = app.add_subcommand("run", "integrate once; CSV of invariant drift and the error metric");
  add_common(run_cmd);
  run_cmd->add_option("--N", cfg.steps, "number of steps")->capture_default_str();
  run_cmd->add_option("--p", cfg.period, "summation period")->capture_default_str();
  run_cmd->add_option("--workers", cfg.workers, "worker threads (1 = serial engine)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "efficiency sweep over several N");
  add_common(sweep);
  sweep->add_option("--N", step_list, "comma-separated step counts")->delimiter(',')->required();
  sweep->add_option("--p", cfg.period, "summation period")->capture_default_str();

  auto* latency = app.add_subcommand("latency", "final error for several summation periods");
  add_common(latency);
  latency->add_option("--N", cfg.steps, "number of steps")->capture_default_str();
  latency->add_option("--p", period_list, "comma-separated summation periods")->delimiter(',')->required();
  latency->add_option("--workers", cfg.workers, "worker threads (0 = one per branch)")->capture_default_str();

  auto* repro = app.add_subcommand("repro", "write desk-scale figure data (order4/6/8, latency) as CSV");
  repro->add_option("--out-dir", out_dir, "directory for the CSV files")->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*list) return cmd_list(out);
    if (*check) return cmd_check(cfg.method, out);
    if (*run_cmd) return cmd_run(cfg, out, err);
    if (*sweep) return cmd_sweep(cfg, step_list, out);
    if (*latency) {
      if (latency->count("--workers") == 0) cfg.workers = 0;
      return cmd_latency(cfg, period_list, out, err);
    }
    if (*repro) return cmd_repro(out_dir, out);
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << '\n';
    return kDivergence;
  } catch (const ReferenceError& e) {
    err << "reference solution failed: " << e.what() << '\n';
    return kDivergence;
  } catch (const WorkerError& e) {
    err << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace genex::cli
