#include "msect/cli/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "msect/bench.hpp"
#include "msect/cli/builtins.hpp"
#include "msect/cli/host.hpp"
#include "msect/convergence.hpp"
#include "msect/errors.hpp"
#include "msect/model.hpp"
#include "msect/solver.hpp"
#include "msect/sweep_io.hpp"

namespace msect::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

class ArgumentError : public Error {
public:
  using Error::Error;
};

struct ProblemSelector {
  int corpus_index = 0;
  std::string function;
  double lo = kUnset;
  double hi = kUnset;
};

void add_selector(CLI::App* cmd, ProblemSelector& sel) {
  cmd->add_option("--corpus", sel.corpus_index, "Corpus problem number, 1-6");
  std::string names;
  for (const std::string& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
  cmd->add_option("--function", sel.function, "Builtin function (" + names + ")");
  cmd->add_option("--lo", sel.lo, "Left bracket end, with --function");
  cmd->add_option("--hi", sel.hi, "Right bracket end, with --function");
}

Problem resolve(const ProblemSelector& sel, int default_corpus) {
  if (!sel.function.empty()) {
    if (sel.corpus_index != 0) throw ArgumentError("--corpus and --function are mutually exclusive");
    std::optional<Function> f = builtin_function(sel.function);
    if (!f) throw ArgumentError("unknown builtin function '" + sel.function + "'");
    if (std::isnan(sel.lo) || std::isnan(sel.hi)) {
      throw ArgumentError("--function needs --lo and --hi");
    }
    try {
      return Problem{sel.function, *f, make_interval(sel.lo, sel.hi), std::nullopt};
    } catch (const DomainError& e) {
      throw ArgumentError(std::string("bad bracket: ") + e.what());
    }
  }
  const int k = sel.corpus_index != 0 ? sel.corpus_index : default_corpus;
  std::vector<Problem> problems = corpus();
  if (k < 1 || k > static_cast<int>(problems.size())) {
    throw ArgumentError("select a problem with --corpus 1-" + std::to_string(problems.size()) +
                        " or --function NAME --lo A --hi B");
  }
  return problems[static_cast<std::size_t>(k - 1)];
}

void require_sections(int sections) {
  if (sections < 2) {
    throw ArgumentError("--sections must be >= 2 (the N-section method needs N >= 2), got " +
                        std::to_string(sections));
  }
}

ordered_json interval_json(const Interval& iv) { return ordered_json::array({iv.lo, iv.hi}); }

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path.string());
  file << content;
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string curve_csv(const EfficiencyReport& report) {
  std::ostringstream os;
  os << "N,T_t\n";
  for (const CurvePoint& p : report.curve) {
    os << p.sections << ',' << format_double(p.total_time) << '\n';
  }
  return os.str();
}

ordered_json manifest(const std::string& command, ordered_json config,
                      const std::vector<fs::path>& outputs) {
  ordered_json paths = ordered_json::array();
  for (const fs::path& p : outputs) paths.push_back(p.string());
  return ordered_json{{"command", command},
                      {"config", std::move(config)},
                      {"timestamp", utc_timestamp()},
                      {"host", host_descriptor()},
                      {"outputs", std::move(paths)}};
}

std::string fixed(double value, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << value;
  return os.str();
}

std::string scientific(double value, int digits) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(digits);
  os << value;
  return os.str();
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  ProblemSelector selector;
  int sections = 2;
  double width_tolerance = kMachinePrecision;
  double residual_tolerance = 0.0;
  int max_iterations = -1;
  bool json = false;
  bool trace = false;
};

int run_solve(const SolveArgs& args, std::ostream& out) {
  require_sections(args.sections);
  const Problem problem = resolve(args.selector, 0);
  SolveOptions options;
  options.sections = args.sections;
  options.width_tolerance = args.width_tolerance;
  options.residual_tolerance = args.residual_tolerance;
  if (args.max_iterations >= 0) options.max_iterations = args.max_iterations;
  options.record_trace = args.trace;
  if (!(options.width_tolerance > 0.0)) throw ArgumentError("--width-tol must be positive");
  if (!(options.residual_tolerance >= 0.0)) throw ArgumentError("--residual-tol must be >= 0");

  const SolveResult result = solve(problem, options);

  if (args.json) {
    ordered_json j{{"problem", problem.id},
                   {"bracket", interval_json(problem.bracket)},
                   {"sections", args.sections},
                   {"root", result.root},
                   {"residual", result.residual},
                   {"iterations", result.iterations},
                   {"function_evaluations", result.function_evaluations},
                   {"termination", to_string(result.termination)},
                   {"final_interval", interval_json(result.final_interval)}};
    if (args.trace) {
      ordered_json trace = ordered_json::array();
      for (const IterationRecord& rec : result.trace) {
        ordered_json nodes = ordered_json::array();
        for (const NodeValue& nv : rec.evaluated_nodes) nodes.push_back({nv.x, nv.fx});
        ordered_json r{{"index", rec.index},
                       {"interval_before", interval_json(rec.interval_before)},
                       {"nodes", std::move(nodes)},
                       {"chosen", interval_json(rec.chosen_subinterval)}};
        if (rec.exact_root) r["exact_root"] = *rec.exact_root;
        trace.push_back(std::move(r));
      }
      j["trace"] = std::move(trace);
    }
    out << j.dump(2) << '\n';
    return kSuccess;
  }

  out << "problem              " << problem.id << " on [" << format_double(problem.bracket.lo)
      << ", " << format_double(problem.bracket.hi) << "], N = " << args.sections << '\n'
      << "root                 " << format_double(result.root) << '\n'
      << "residual             " << format_double(result.residual) << '\n'
      << "iterations           " << result.iterations << '\n'
      << "function_evaluations " << result.function_evaluations << '\n'
      << "termination          " << to_string(result.termination) << '\n';
  if (args.trace) {
    for (const IterationRecord& rec : result.trace) {
      out << "  " << rec.index << ": [" << format_double(rec.interval_before.lo) << ", "
          << format_double(rec.interval_before.hi) << "] -> ["
          << format_double(rec.chosen_subinterval.lo) << ", "
          << format_double(rec.chosen_subinterval.hi) << "]\n";
    }
  }
  return kSuccess;
}

// ------------------------------------------------------------ calibrate

struct CalibrateArgs {
  ProblemSelector selector;
  std::vector<int> n_values;
  std::int64_t min_loops = 1000;
  std::int64_t warmup_loops = 100;
  double width_tolerance = kMachinePrecision;
  std::string out_dir;
  std::vector<double> synthetic;
  bool quiet = false;
};

std::atomic<bool> calibration_running{false};

int run_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err) {
  if (calibration_running.exchange(true)) {
    throw Error("a calibration is already running in this process");
  }
  struct Release {
    ~Release() { calibration_running = false; }
  } release;

  const Problem problem = resolve(args.selector, 1);
  SweepConfig config;
  if (!args.n_values.empty()) config.n_values = args.n_values;
  for (int n : config.n_values) require_sections(n);
  if (args.min_loops < 1) throw ArgumentError("--min-loops must be >= 1");
  if (args.warmup_loops < 0) throw ArgumentError("--warmup-loops must be >= 0");
  if (!(args.width_tolerance > 0.0)) throw ArgumentError("--width-tol must be positive");
  config.min_loops = args.min_loops;
  config.warmup_loops = args.warmup_loops;
  config.width_tolerance = args.width_tolerance;

  std::unique_ptr<Clock> clock;
  if (!args.synthetic.empty()) {
    if (args.synthetic.size() != 2) throw ArgumentError("--synthetic-clock takes M,C");
    try {
      clock = std::make_unique<SyntheticClock>(CostModel(args.synthetic[0], args.synthetic[1]));
    } catch (const DomainError& e) {
      throw ArgumentError(std::string("--synthetic-clock: ") + e.what());
    }
  } else {
    clock = std::make_unique<SteadyClock>();
  }

  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ArgumentError("cannot create output directory " + args.out_dir);

  ordered_json config_echo{{"problem", problem.id},
                           {"bracket", interval_json(problem.bracket)},
                           {"n_values", config.n_values},
                           {"min_loops", config.min_loops},
                           {"warmup_loops", config.warmup_loops},
                           {"width_tolerance", config.width_tolerance},
                           {"clock", args.synthetic.empty() ? "steady" : "synthetic"}};
  if (!args.synthetic.empty()) {
    config_echo["synthetic_m"] = args.synthetic[0];
    config_echo["synthetic_c"] = args.synthetic[1];
  }

  std::vector<TimingSample> samples = sweep(problem, config, *clock, args.quiet ? nullptr : &err);
  std::vector<fs::path> outputs{dir / "sweep.csv"};
  {
    std::ostringstream csv;
    write_sweep_csv(csv, samples);
    write_text_file(outputs.back(), csv.str());
  }

  Calibration cal;
  try {
    cal = calibrate_from_samples(problem, config, std::move(samples), *clock);
  } catch (const FitError&) {
    write_json_file(dir / "manifest.json", manifest("calibrate", config_echo, outputs));
    throw;
  }

  outputs.push_back(dir / "fit.json");
  write_json_file(outputs.back(), ordered_json{{"m", cal.fit.m},
                                               {"c", cal.fit.c},
                                               {"r_squared", cal.fit.r_squared},
                                               {"sample_count", cal.fit.sample_count},
                                               {"low_confidence", cal.fit.low_confidence()}});
  outputs.push_back(dir / "report.json");
  write_json_file(outputs.back(), ordered_json{{"R", cal.report.ratio},
                                               {"n_min_real", cal.report.n_min_real},
                                               {"n_min_integer", cal.report.n_min_integer},
                                               {"rel_eff", cal.report.rel_eff},
                                               {"r_squared", cal.fit.r_squared},
                                               {"measured_ratio", cal.measured_ratio}});
  outputs.push_back(dir / "curve.csv");
  write_text_file(outputs.back(), curve_csv(cal.report));
  write_json_file(dir / "manifest.json", manifest("calibrate", config_echo, outputs));

  out << "f(x) | [a,b] | R (=c/m) | N_min | r^2 | RelEff\n"
      << problem.id << " | [" << format_double(problem.bracket.lo) << ", "
      << format_double(problem.bracket.hi) << "] | " << scientific(cal.report.ratio, 2) << " | "
      << cal.report.n_min_integer << " | " << fixed(cal.fit.r_squared, 3) << " | "
      << fixed(cal.report.rel_eff, 3) << '\n'
      << "measured T(N_min)/T(2) = " << fixed(cal.measured_ratio, 3) << " (predicted "
      << fixed(cal.report.rel_eff, 3) << ")\n";
  if (cal.fit.low_confidence()) {
    out << "warning: fit uses fewer than 3 points; r^2 = 1 by construction (low confidence)\n";
  }
  if (args.synthetic.empty()) {
    out << "note: timings are specific to this host (" << host_descriptor() << ")\n";
  } else {
    out << "note: synthetic clock, no wall-clock measurement was made\n";
  }
  return kSuccess;
}

// -------------------------------------------------------------- predict

struct PredictArgs {
  double ratio = kUnset;
  double m = kUnset;
  double c = kUnset;
  double width = 1.0;
  double mu = kMachinePrecision;
  int n_max = 250;
  bool json = false;
  std::string curve;
};

int run_predict(const PredictArgs& args, std::ostream& out) {
  const bool by_ratio = !std::isnan(args.ratio);
  const bool by_cost = !std::isnan(args.m) || !std::isnan(args.c);
  if (by_ratio == by_cost) throw ArgumentError("give either --ratio R or both --m and --c");
  if (by_cost && (std::isnan(args.m) || std::isnan(args.c))) {
    throw ArgumentError("--m and --c must be given together");
  }
  if (args.n_max < 2) throw ArgumentError("--n-max must be >= 2");

  // With only R known, time is expressed in units of m.
  const CostModel cost = by_ratio ? CostModel(1.0, args.ratio) : CostModel(args.m, args.c);
  const ProblemScale scale(args.width, args.mu);
  const int n_best = n_min_integer(cost, scale);
  const EfficiencyReport report = efficiency_report(cost, scale, 2, std::max(args.n_max, n_best));

  if (args.json) {
    out << ordered_json{{"R", report.ratio},
                        {"n_min_real", report.n_min_real},
                        {"n_min_integer", report.n_min_integer},
                        {"rel_eff", report.rel_eff},
                        {"rel_eff_integer", report.rel_eff_integer},
                        {"t_t_at_2", report.t_t_at_2},
                        {"t_t_at_min", report.t_t_at_min}}
                .dump(2)
        << '\n';
  } else {
    out << "R               " << format_double(report.ratio) << '\n'
        << "n_min_real      " << format_double(report.n_min_real) << '\n'
        << "n_min_integer   " << report.n_min_integer << '\n'
        << "rel_eff         " << format_double(report.rel_eff) << '\n'
        << "rel_eff_integer " << format_double(report.rel_eff_integer) << '\n';
  }

  if (!args.curve.empty()) {
    const fs::path path(args.curve);
    write_text_file(path, curve_csv(report));
    fs::path manifest_path = path;
    manifest_path += ".manifest.json";
    ordered_json config{{"R", report.ratio},
                        {"m", cost.m},
                        {"c", cost.c},
                        {"width", scale.width},
                        {"mu", scale.mu},
                        {"n_max", std::max(args.n_max, n_best)}};
    write_json_file(manifest_path, manifest("predict", std::move(config), {path}));
  }
  return kSuccess;
}

// ------------------------------------------------------------- appendix

struct AppendixArgs {
  double width = 1.0;
  int sections = 2;
  double eps = kMachinePrecision;
};

int run_appendix(const AppendixArgs& args, std::ostream& out) {
  require_sections(args.sections);
  if (!(args.width > 0.0) || !std::isfinite(args.width)) {
    throw ArgumentError("--width must be positive and finite");
  }
  if (!(args.eps > 0.0) || args.eps > args.width) throw ArgumentError("--eps must lie in (0, width]");

  const BoundSequence seq(args.width, args.sections);
  std::string fib_label = "first_index_below(eps = " + format_double(args.eps) + ")";
  fib_label.resize(std::max<std::size_t>(fib_label.size() + 1, 40), ' ');
  out << "bound sequence B_i = width / N^i with width = " << format_double(args.width)
      << ", N = " << args.sections << '\n'
      << fib_label << first_index_below(seq, args.eps) << '\n'
      << "predicted_max_iterations(mu = eps)      "
      << predicted_max_iterations(args.width, args.eps, args.sections) << '\n'
      << "underflow exponent z, gradual underflow " << underflow_exponent(args.width) << '\n'
      << "underflow exponent z, flush-to-zero     "
      << underflow_exponent(args.width, UnderflowMode::FlushToZero) << '\n'
      << "host arithmetic keeps subnormals        " << (host_supports_subnormals() ? "yes" : "no")
      << '\n'
      << "z reported for the original platform    " << kReportedUnderflowExponent
      << " (comparison only)\n"
      << "counterexample root (reference only)    " << format_double(kCounterexampleRoot) << '\n'
      << "error bound |p_i - p| <= B_i over the corpus at N = " << args.sections << ":\n";

  bool all_ok = true;
  for (const Problem& problem : corpus()) {
    const BoundReport report = check_error_bounds(problem, args.sections);
    const std::vector<BoundCheck> bad = report.violations();
    out << "  " << problem.id << ": " << report.checks.size() << " iterations, ";
    if (bad.empty()) {
      out << "ok\n";
      continue;
    }
    all_ok = false;
    out << "VIOLATED at iteration";
    for (const BoundCheck& c : bad) out << ' ' << c.iteration;
    out << " (worst |p_i - p| = " << format_double(bad.back().error)
        << ", B_i = " << format_double(bad.back().bound) << ")\n";
  }
  return all_ok ? kSuccess : kBoundViolation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multisection root finding with a calibrated choice of section count", "msect"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one problem with the N-section method");
  add_selector(solve_cmd, solve_args.selector);
  solve_cmd->add_option("--sections,-N", solve_args.sections, "Section count N >= 2");
  solve_cmd->add_option("--width-tol", solve_args.width_tolerance, "Absolute interval width tolerance");
  solve_cmd->add_option("--residual-tol", solve_args.residual_tolerance, "Stop when |f(node)| <= this");
  solve_cmd->add_option("--max-iterations", solve_args.max_iterations, "Iteration cap");
  solve_cmd->add_flag("--json", solve_args.json, "Print JSON");
  solve_cmd->add_flag("--trace", solve_args.trace, "Include the per-iteration trace");

  CalibrateArgs cal_args;
  CLI::App* cal_cmd =
      app.add_subcommand("calibrate", "Time the solver over N, fit m*N + c and predict N_min");
  add_selector(cal_cmd, cal_args.selector);
  cal_cmd->add_option("--n-values", cal_args.n_values, "Section counts to sweep (default 2-250)")
      ->delimiter(',');
  cal_cmd->add_option("--min-loops", cal_args.min_loops, "Timed loops per N");
  cal_cmd->add_option("--warmup-loops", cal_args.warmup_loops, "Discarded loops per N");
  cal_cmd->add_option("--width-tol", cal_args.width_tolerance, "Absolute interval width tolerance");
  cal_cmd->add_option("--out", cal_args.out_dir, "Output directory")->required();
  cal_cmd->add_option("--synthetic-clock", cal_args.synthetic,
                      "Replace the wall clock by loop cost M*N + C seconds")
      ->delimiter(',')
      ->expected(2);
  cal_cmd->add_flag("--quiet", cal_args.quiet, "No progress lines");

  PredictArgs pred_args;
  CLI::App* pred_cmd = app.add_subcommand("predict", "Evaluate the cost model for given R or m, c");
  pred_cmd->add_option("--ratio,-R", pred_args.ratio, "R = c/m");
  pred_cmd->add_option("--m", pred_args.m, "Per-section loop cost");
  pred_cmd->add_option("--c", pred_args.c, "N-independent loop cost");
  pred_cmd->add_option("--width", pred_args.width, "Bracket width b - a");
  pred_cmd->add_option("--mu", pred_args.mu, "Width tolerance");
  pred_cmd->add_option("--n-max", pred_args.n_max, "Largest N on the curve");
  pred_cmd->add_option("--curve", pred_args.curve, "Write the (N, T_t) curve to this CSV");
  pred_cmd->add_flag("--json", pred_args.json, "Print JSON");

  AppendixArgs app_args;
  CLI::App* app_cmd =
      app.add_subcommand("appendix", "Error-bound sequence, underflow exponent, bound checks");
  app_cmd->add_option("--width", app_args.width, "Initial width b - a");
  app_cmd->add_option("--sections,-N", app_args.sections, "Section count N >= 2");
  app_cmd->add_option("--eps", app_args.eps, "Target bound for first_index_below");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kArguments;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args, out);
    if (*cal_cmd) return run_calibrate(cal_args, out, err);
    if (*pred_cmd) return run_predict(pred_args, out);
    if (*app_cmd) return run_appendix(app_args, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kArguments;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kArguments;
  } catch (const BracketError& e) {
    err << "bracket error: " << e.what() << '\n';
    return kBracket;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kFit;
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << '\n';
    return kBoundViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kArguments;
}

}  // namespace msect::cli
