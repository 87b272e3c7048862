#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracseries/natural_transform.hpp"
#include "fracseries/nthpm.hpp"
#include "fracseries/numeric_format.hpp"
#include "fracseries/problem.hpp"
#include "fracseries/reference_oracle.hpp"
#include "fracseries/series_algebra.hpp"
#include "fracseries/special_functions.hpp"

namespace fracseries::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * i / static_cast<double>(count - 1);
  return v;
}

struct GridOptions {
  double x_min = 0.0;
  double x_max = 3.141592653589793;
  int x_count = 21;
  double t_min = 0.0;
  double t_max = 1.0;
  int t_count = 11;
};

void add_grid_flags(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--x-min", g.x_min, "Lower end of every spatial axis");
  cmd->add_option("--x-max", g.x_max, "Upper end of every spatial axis");
  cmd->add_option("--x-count", g.x_count, "Nodes per spatial axis (>= 2)")
      ->check(CLI::Range(2, 1000000));
  cmd->add_option("--t-min", g.t_min, "First time level (>= 0)");
  cmd->add_option("--t-max", g.t_max, "Last time level");
  cmd->add_option("--t-count", g.t_count, "Number of time levels (>= 2)")
      ->check(CLI::Range(2, 1000000));
}

// Loads the problem and applies the alpha override / default checks shared
// by solve and residual.
ProblemSpec load_spec(const std::string& path, double alpha_flag) {
  ProblemSpec spec = load_problem(path);
  if (alpha_flag != 0.0) spec.alpha = alpha_flag;
  if (spec.alpha == 0.0)
    throw std::invalid_argument(
        "no fractional order: the problem file sets no alpha and no --alpha "
        "was given");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  return spec;
}

// Walks the tensor grid (all spatial axes share the x range) and calls
// fn(point, t) in a fixed deterministic order.
void for_each_grid_point(
    int dim, const GridOptions& g,
    const std::function<void(const std::vector<double>&, double)>& fn) {
  const std::vector<double> xs = linspace(g.x_min, g.x_max, g.x_count);
  const std::vector<double> ts = linspace(g.t_min, g.t_max, g.t_count);
  std::vector<double> point(dim, 0.0);
  std::vector<int> idx(dim, 0);
  for (;;) {
    for (int d = 0; d < dim; ++d) point[d] = xs[idx[d]];
    for (double t : ts) fn(point, t);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == g.x_count) idx[d--] = 0;
    if (d < 0) break;
  }
}

std::string csv_header(int dim, const char* value_cols) {
  std::string h = "component,x";
  if (dim >= 2) h += ",y";
  if (dim >= 3) h += ",z";
  h += ",t,";
  h += value_cols;
  return h;
}

void print_summary(std::ostream& out, const ProblemSpec& spec,
                   const SolutionBundle& sol) {
  out << "alpha: " << format_double(spec.alpha)
      << "  terms: " << sol.truncation << "  dim: " << spec.dim << "\n";
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    out << "component " << spec.components[c] << ":\n";
    if (sol.closed_forms[c]) {
      out << "  closed form: (" << render(sol.closed_forms[c]->profile)
          << ") * E_a(" << format_double(sol.closed_forms[c]->lambda)
          << " * t^a)\n";
    } else {
      out << "  closed form: none detected\n";
    }
    out << "  coefficients:\n";
    for (int k = 0; k <= sol.series[c].order(); ++k)
      out << "    a_" << k << " = " << render(sol.series[c].at(k)) << "\n";
  }
}

// ------------------------------------------------------------------ solve

struct SolveOptions {
  std::string problem;
  double alpha = 0.0;
  int terms = 10;
  GridOptions grid;
  std::string out;
};

int run_solve(const SolveOptions& opt) {
  ProblemSpec spec = load_spec(opt.problem, opt.alpha);
  SolutionBundle sol = iterate(spec, opt.terms);
  ResidualEvaluator res(spec, sol);

  std::ofstream out(opt.out);
  if (!out) {
    std::cerr << "error: cannot write output file: " << opt.out << "\n";
    return kExitConfig;
  }
  out << csv_header(spec.dim, "value,residual") << "\n";
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    for_each_grid_point(
        spec.dim, opt.grid,
        [&](const std::vector<double>& pt, double t) {
          out << spec.components[c];
          for (double x : pt) out << ',' << format_double(x);
          out << ',' << format_double(t) << ','
              << format_double(eval_series(sol.series[c], pt, t)) << ','
              << format_double(res(static_cast<int>(c), pt, t)) << "\n";
        });
  }
  std::cout << "problem: " << opt.problem << "\n";
  print_summary(std::cout, spec, sol);
  std::cout << "wrote " << opt.out << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- residual

struct ResidualOptions {
  std::string problem;
  double alpha = 0.0;
  int terms = 10;
  int up_to = -1;
  GridOptions grid;
  std::string out;
  double tol = 0.0;  // 0 = no check
};

int run_residual(const ResidualOptions& opt) {
  ProblemSpec spec = load_spec(opt.problem, opt.alpha);
  SolutionBundle sol = iterate(spec, opt.terms);
  ResidualEvaluator res(spec, sol, opt.up_to);

  std::ofstream file;
  std::ostream* csv = nullptr;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      std::cerr << "error: cannot write output file: " << opt.out << "\n";
      return kExitConfig;
    }
    csv = &file;
    *csv << csv_header(spec.dim, "residual") << "\n";
  }

  std::vector<double> worst(spec.components.size(), 0.0);
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    for_each_grid_point(
        spec.dim, opt.grid,
        [&](const std::vector<double>& pt, double t) {
          const double r = res(static_cast<int>(c), pt, t);
          worst[c] = std::max(worst[c], r);
          if (csv) {
            *csv << spec.components[c];
            for (double x : pt) *csv << ',' << format_double(x);
            *csv << ',' << format_double(t) << ',' << format_double(r)
                 << "\n";
          }
        });
  }

  double overall = 0.0;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    std::cout << "component " << spec.components[c]
              << ": max residual " << format_double(worst[c]) << "\n";
    overall = std::max(overall, worst[c]);
  }
  if (opt.tol > 0.0 && overall > opt.tol) {
    std::cerr << "residual check failed: " << format_double(overall) << " > "
              << format_double(opt.tol) << "\n";
    return kExitTolerance;
  }
  return kExitOk;
}

// --------------------------------------------------------- transform-check

struct TableRow {
  const char* name;
  TimeSignal signal;
  std::function<double(double, double)> image;  // exact image value (s, u)
};

int run_transform_check(double tol) {
  // Reference rows with their exact images. The growth bounds are chosen
  // per row so every signal genuinely satisfies |f(t)| <= M e^{t/tau} on
  // the whole truncated integration range.
  const std::vector<TableRow> rows = {
      {"1", {[](double) { return 1.0; }, 5.0, 4.0},
       [](double s, double) { return 1.0 / s; }},
      {"t", {[](double t) { return t; }, 5.0, 4.0},
       [](double s, double u) { return u / (s * s); }},
      {"t^2/2", {[](double t) { return 0.5 * t * t; }, 5.0, 4.0},
       [](double s, double u) { return u * u / (s * s * s); }},
      {"sin(t)", {[](double t) { return std::sin(t); }, 5.0, 4.0},
       [](double s, double u) { return u / (s * s + u * u); }},
      {"exp(0.25*t)", {[](double t) { return std::exp(0.25 * t); }, 1.0, 4.0},
       [](double s, double u) { return 1.0 / (s - 0.25 * u); }},
  };
  const std::vector<double> us = {0.5, 0.8, 1.0, 1.5, 2.0};
  const std::vector<double> ratios = {0.5, 1.0, 2.0, 3.5, 5.0};

  bool ok = true;
  for (const TableRow& row : rows) {
    double worst = 0.0;
    for (double u : us)
      for (double r : ratios) {
        const double s = r * u;
        const ForwardResult got = nt_forward_numeric(row.signal, s, u);
        worst = std::max(worst, std::abs(got.value - row.image(s, u)));
      }
    const bool pass = worst <= tol;
    ok = ok && pass;
    std::cout << (pass ? "ok   " : "FAIL ") << row.name << ": max err "
              << format_double(worst) << "\n";
  }
  if (!ok) {
    std::cerr << "transform check failed (tolerance "
              << format_double(tol) << ")\n";
    return kExitTolerance;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
  std::string problem;
  double alpha = 0.0;
  int terms = 12;
  double x_min = 0.0;
  double x_max = 3.141592653589793;
  int n_x = 201;
  double T = 0.5;
  int n_t = 2000;
  std::string out;
  double tol = 0.0;
};

int run_compare(const CompareOptions& opt) {
  ProblemSpec spec = load_spec(opt.problem, opt.alpha);
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw std::invalid_argument(
        "compare: the reference scheme needs alpha strictly inside (0, 1)");
  // The finite-difference reference handles exactly one shape of problem.
  const bool oracle_shaped =
      spec.components.size() == 1 && spec.dim == 1 &&
      spec.equations[0].monomials.empty() &&
      spec.equations[0].source_constant == 0.0 && spec.sources.empty() &&
      spec.equations[0].linear.size() == 1 &&
      spec.equations[0].linear[0].component == 0 &&
      spec.equations[0].linear[0].orders == std::array<int, 3>{2, 0, 0};
  if (!oracle_shaped)
    throw std::invalid_argument(
        "compare supports only single-component 1-D problems of the form "
        "Dt^a v = c*v_xx");
  const double diffusivity = spec.equations[0].linear[0].coeff;

  SolutionBundle sol = iterate(spec, opt.terms);
  const FracSeries& series = sol.series[0];

  // Boundary values for the reference march come from the series itself,
  // so the comparison measures interior behaviour.
  auto boundary = [&series](double x, double t) {
    return eval_series(series, {x}, t);
  };
  oracle::OracleGrid grid =
      oracle::l1_solve(spec.alpha, diffusivity, spec.initial_conditions[0],
                       opt.x_min, opt.x_max, boundary, opt.n_x, opt.n_t,
                       opt.T);
  oracle::ErrorReport report = oracle::compare(series, grid);

  std::ofstream file;
  const bool to_file = !opt.out.empty();
  if (to_file) {
    file.open(opt.out);
    if (!file) {
      std::cerr << "error: cannot write output file: " << opt.out << "\n";
      return kExitConfig;
    }
  }
  std::ostream& csv = to_file ? static_cast<std::ostream&>(file) : std::cout;
  std::ostream& info = to_file ? std::cout : std::cerr;

  csv << "x,t,series,oracle,abs_err\n";
  std::vector<double> point(1);
  for (int n = 0; n <= grid.n_t; ++n)
    for (int i = 0; i < grid.n_x; ++i) {
      point[0] = grid.x[i];
      const double sv = eval_series(series, point, grid.t[n]);
      const double ov = grid.at(n, i);
      csv << format_double(grid.x[i]) << ',' << format_double(grid.t[n])
          << ',' << format_double(sv) << ',' << format_double(ov) << ','
          << format_double(std::abs(sv - ov)) << "\n";
    }

  info << "max abs: " << format_double(report.max_abs)
       << "  rms: " << format_double(report.rms) << "\n";
  if (opt.tol > 0.0 && report.max_abs > opt.tol) {
    std::cerr << "comparison failed: " << format_double(report.max_abs)
              << " > " << format_double(opt.tol) << "\n";
    return kExitTolerance;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- ml-eval

struct MlEvalOptions {
  std::vector<double> alphas = {0.5, 0.75, 1.0};
  double z_min = -10.0;
  double z_max = 2.0;
  int z_count = 61;
  std::string out;
};

int run_ml_eval(const MlEvalOptions& opt) {
  std::ofstream file;
  const bool to_file = !opt.out.empty();
  if (to_file) {
    file.open(opt.out);
    if (!file) {
      std::cerr << "error: cannot write output file: " << opt.out << "\n";
      return kExitConfig;
    }
  }
  std::ostream& csv = to_file ? static_cast<std::ostream&>(file) : std::cout;

  csv << "alpha,z,value\n";
  int warnings = 0;
  for (double a : opt.alphas) {
    if (!(a > 0.0))
      throw std::invalid_argument("ml-eval: alpha must be positive");
    for (double z : linspace(opt.z_min, opt.z_max, opt.z_count)) {
      const MittagLefflerResult r = mittag_leffler_ex(a, z);
      if (r.precision_warning) ++warnings;
      csv << format_double(a) << ',' << format_double(z) << ','
          << format_double(r.value) << "\n";
    }
  }
  if (warnings > 0)
    std::cerr << "warning: " << warnings
              << " value(s) carry reduced precision (argument beyond the "
                 "series' comfort zone)\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{
      "Fractional power-series PDE solver: hybrid natural-transform + "
      "perturbation method with transform tables, residual checks and an "
      "independent finite-difference reference.\n"
      "The environment variable FRACSERIES_SEED is reserved for future "
      "stochastic features and is currently unused."};
  app.name("fracseries");
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "Run the series recursion and write value/residual CSV");
  solve->add_option("--problem", solve_opt.problem, "Problem file")
      ->required();
  solve->add_option("--alpha", solve_opt.alpha,
                    "Fractional order in (0,1]; overrides the file");
  solve->add_option("--terms", solve_opt.terms, "Truncation order N >= 1")
      ->check(CLI::Range(1, 10000));
  add_grid_flags(solve, solve_opt.grid);
  solve->add_option("--out", solve_opt.out, "Output CSV path")->required();

  ResidualOptions res_opt;
  CLI::App* residual = app.add_subcommand(
      "residual", "Evaluate |D_t^a u - RHS(u)| of the truncated series");
  residual->add_option("--problem", res_opt.problem, "Problem file")
      ->required();
  residual->add_option("--alpha", res_opt.alpha,
                       "Fractional order in (0,1]; overrides the file");
  residual->add_option("--terms", res_opt.terms, "Truncation order N >= 1")
      ->check(CLI::Range(1, 10000));
  residual->add_option("--up-to", res_opt.up_to,
                       "Evaluate both sides through this series level "
                       "(default: N)");
  add_grid_flags(residual, res_opt.grid);
  residual->add_option("--out", res_opt.out, "Optional residual CSV path");
  residual->add_option("--tol", res_opt.tol,
                       "Fail (exit 3) when the max residual exceeds this");

  double check_tol = 1e-6;
  CLI::App* tcheck = app.add_subcommand(
      "transform-check",
      "Verify the numeric transform against closed-form table rows");
  tcheck->add_option("--tol", check_tol, "Per-row tolerance (default 1e-6)");

  CompareOptions cmp_opt;
  CLI::App* compare = app.add_subcommand(
      "compare",
      "Compare the series against the finite-difference reference (1-D "
      "diffusion problems)");
  compare->add_option("--problem", cmp_opt.problem, "Problem file")
      ->required();
  compare->add_option("--alpha", cmp_opt.alpha,
                      "Fractional order in (0,1); overrides the file");
  compare->add_option("--terms", cmp_opt.terms, "Truncation order N >= 1")
      ->check(CLI::Range(1, 10000));
  compare->add_option("--x-min", cmp_opt.x_min, "Left end of the domain");
  compare->add_option("--x-max", cmp_opt.x_max, "Right end of the domain");
  compare->add_option("--nx", cmp_opt.n_x, "Spatial nodes (3..2048)")
      ->check(CLI::Range(3, 2048));
  compare->add_option("--T", cmp_opt.T, "Final time (> 0)");
  compare->add_option("--nt", cmp_opt.n_t, "Time steps (1..8192)")
      ->check(CLI::Range(1, 8192));
  compare->add_option("--out", cmp_opt.out,
                      "CSV path (default: standard output)");
  compare->add_option("--tol", cmp_opt.tol,
                      "Fail (exit 3) when max abs error exceeds this");

  MlEvalOptions ml_opt;
  CLI::App* ml = app.add_subcommand(
      "ml-eval", "Tabulate Mittag-Leffler values for plotting");
  ml->add_option("--alpha", ml_opt.alphas,
                 "Order(s) to tabulate (repeatable; default 0.5 0.75 1)");
  ml->add_option("--z-min", ml_opt.z_min, "Smallest argument");
  ml->add_option("--z-max", ml_opt.z_max, "Largest argument");
  ml->add_option("--z-count", ml_opt.z_count, "Number of arguments (>= 2)")
      ->check(CLI::Range(2, 1000000));
  ml->add_option("--out", ml_opt.out, "CSV path (default: standard output)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fracseries");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return run_solve(solve_opt);
    if (residual->parsed()) return run_residual(res_opt);
    if (tcheck->parsed()) return run_transform_check(check_tol);
    if (compare->parsed()) return run_compare(cmp_opt);
    if (ml->parsed()) return run_ml_eval(ml_opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;  // unreachable with require_subcommand(1)
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace fracseries::cli
