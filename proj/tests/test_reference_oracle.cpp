#include "fracseries/reference_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracseries/nthpm.hpp"
#include "fracseries/problem.hpp"
#include "fracseries/series_algebra.hpp"
#include "fracseries/special_functions.hpp"

using namespace fracseries;

namespace {

const double kPi = 3.14159265358979323846;

std::string fixture(const char* name) {
  return std::string(FRACSERIES_FIXTURE_DIR) + "/" + name;
}

// Exact solution of D_t^alpha v = v_xx with v(x,0) = sin x and zero
// Dirichlet data on [0, pi].
double exact_diffusion(double alpha, double x, double t) {
  return std::sin(x) * mittag_leffler(alpha, -std::pow(t, alpha));
}

oracle::OracleGrid solve_diffusion(double alpha, int n_x, int n_t, double T) {
  return oracle::l1_solve(
      alpha, 1.0, parse_spatial("sin(x)"), 0.0, kPi,
      [alpha](double x, double t) { return exact_diffusion(alpha, x, t); },
      n_x, n_t, T);
}

double max_err_all_levels(const oracle::OracleGrid& g) {
  double worst = 0.0;
  for (int n = 1; n < g.levels(); ++n) {
    for (int i = 0; i < g.n_x; ++i) {
      worst = std::max(
          worst, std::abs(g.at(n, i) - exact_diffusion(g.alpha, g.x[i], g.t[n])));
    }
  }
  return worst;
}

double max_err_final_level(const oracle::OracleGrid& g) {
  double worst = 0.0;
  const int n = g.levels() - 1;
  for (int i = 0; i < g.n_x; ++i) {
    worst = std::max(
        worst, std::abs(g.at(n, i) - exact_diffusion(g.alpha, g.x[i], g.t[n])));
  }
  return worst;
}

}  // namespace

TEST_SUITE("reference_oracle") {

TEST_CASE("level zero is the sampled initial condition, exactly") {
  const Expr ic = parse_spatial("sin(x)");
  const auto g = oracle::l1_solve(
      0.5, 1.0, ic, 0.0, kPi, [](double, double) { return 0.0; }, 21, 4, 0.5);
  REQUIRE(g.n_x == 21);
  REQUIRE(g.levels() == 5);
  REQUIRE(g.x.size() == 21);
  REQUIRE(g.t.size() == 5);
  CHECK(g.t[0] == 0.0);
  for (int i = 0; i < g.n_x; ++i) {
    CHECK(g.at(0, i) == ic.eval({g.x[i]}));
  }
}

TEST_CASE("discretization weights: unit head, decay, telescoping") {
  // b_j = (j+1)^{1-alpha} - j^{1-alpha} is the kernel the marcher uses;
  // pin its defining identities.
  for (double alpha : {0.3, 0.5, 0.8}) {
    std::vector<double> b;
    for (int j = 0; j <= 50; ++j) {
      b.push_back(std::pow(j + 1.0, 1.0 - alpha) - std::pow(j, 1.0 - alpha));
    }
    CHECK(b[0] == 1.0);
    double sum = 0.0;
    for (int j = 0; j <= 50; ++j) {
      if (j > 0) CHECK(b[j] < b[j - 1]);
      CHECK(b[j] > 0.0);
      sum += b[j];
    }
    CHECK(std::abs(sum - std::pow(51.0, 1.0 - alpha)) <= 1e-14 * sum + 1e-14);
  }
}

TEST_CASE("near-integer order reduces to the classical diffusion solution") {
  // At alpha = 0.999 the history weights all but vanish (b_1 is within 1e-2
  // of 0) and the march is backward Euler on D_t v = v_xx.
  const double alpha = 0.999;
  CHECK(std::abs(std::pow(2.0, 1.0 - alpha) - 1.0) <= 1e-2);
  const auto g = solve_diffusion(alpha, 101, 200, 1.0);
  double worst = 0.0;
  for (int i = 0; i < g.n_x; ++i) {
    worst = std::max(
        worst, std::abs(g.at(g.levels() - 1, i) -
                        std::exp(-1.0) * std::sin(g.x[i])));
  }
  CHECK(worst <= 1e-2);
}

TEST_CASE("half-order diffusion tracks the Mittag-Leffler solution") {
  const auto g = solve_diffusion(0.5, 201, 2000, 0.5);
  CHECK(max_err_all_levels(g) <= 5e-3);
}

TEST_CASE("refinement converges at the sharp orders of the weak layer") {
  // The exact solution has a t^alpha corner at t = 0, so the classical
  // smooth-solution rate does not apply: the global error is dominated by
  // the initial layer and refines at roughly order alpha, while the error
  // at the final time refines at roughly first order.
  std::vector<double> layer, final_level;
  for (int n_t : {250, 500, 1000, 2000}) {
    const auto g = solve_diffusion(0.5, 201, n_t, 0.5);
    layer.push_back(max_err_all_levels(g));
    final_level.push_back(max_err_final_level(g));
  }
  for (std::size_t i = 1; i < layer.size(); ++i) {
    const double slope_layer = std::log2(layer[i - 1] / layer[i]);
    const double slope_final = std::log2(final_level[i - 1] / final_level[i]);
    CHECK(slope_layer >= 0.35);
    CHECK(slope_layer <= 0.65);
    CHECK(slope_final >= 0.8);
    CHECK(slope_final <= 1.1);
  }
}

TEST_CASE("identical runs produce identical grids") {
  const auto a = solve_diffusion(0.5, 51, 100, 0.5);
  const auto b = solve_diffusion(0.5, 51, 100, 0.5);
  CHECK(a.values == b.values);
}

TEST_CASE("comparator is exact on a grid sampled from the series itself") {
  const ProblemSpec spec = load_problem(fixture("diffusion1d.frac"));
  const SolutionBundle sol = iterate(spec, 8);

  oracle::OracleGrid g;
  g.alpha = spec.alpha;
  g.n_x = 11;
  g.n_t = 5;
  for (int i = 0; i < g.n_x; ++i) g.x.push_back(kPi * i / (g.n_x - 1));
  for (int n = 0; n <= g.n_t; ++n) g.t.push_back(0.1 * n);
  for (int n = 0; n <= g.n_t; ++n) {
    for (int i = 0; i < g.n_x; ++i) {
      g.values.push_back(eval_series(sol.series[0], {g.x[i]}, g.t[n]));
    }
  }
  const auto report = oracle::compare(sol.series[0], g);
  CHECK(report.max_abs == 0.0);
  CHECK(report.rms == 0.0);
  REQUIRE(report.per_level_max.size() == static_cast<std::size_t>(g.levels()));
  CHECK(report.per_level_max[0] == 0.0);
}

TEST_CASE("series vs oracle on the linear diffusion fixture") {
  const ProblemSpec spec = load_problem(fixture("diffusion1d.frac"));
  const SolutionBundle sol = iterate(spec, 12);
  const auto g = solve_diffusion(spec.alpha, 201, 2000, 0.5);
  const auto report = oracle::compare(sol.series[0], g);
  CHECK(report.max_abs <= 5e-3);
  CHECK(report.rms <= report.max_abs);
  CHECK(report.rms > 0.0);
  // Error profile: nothing at t = 0, finite everywhere else.
  CHECK(report.per_level_max[0] == 0.0);
  for (double e : report.per_level_max) CHECK(std::isfinite(e));
}

TEST_CASE("comparator rejects mismatched lattices and dimensions") {
  const auto g = solve_diffusion(0.5, 21, 10, 0.5);
  FracSeries wrong_alpha = FracSeries::from_initial(0.7, parse_spatial("sin(x)"));
  CHECK_THROWS_AS(oracle::compare(wrong_alpha, g), std::invalid_argument);
  FracSeries wrong_dim = FracSeries::from_initial(0.5, parse_spatial("x*y"));
  CHECK_THROWS_AS(oracle::compare(wrong_dim, g), std::invalid_argument);
}

TEST_CASE("solver preconditions") {
  const Expr ic = parse_spatial("sin(x)");
  const auto bc = [](double, double) { return 0.0; };
  CHECK_THROWS_AS(oracle::l1_solve(1.0, 1.0, ic, 0.0, kPi, bc, 21, 10, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.0, 1.0, ic, 0.0, kPi, bc, 21, 10, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, 0.0, kPi, bc, 2, 10, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, 0.0, kPi, bc, 3000, 10, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, 0.0, kPi, bc, 21, 0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, 0.0, kPi, bc, 21, 9000, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, 0.0, kPi, bc, 21, 10, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::l1_solve(0.5, 1.0, ic, kPi, 0.0, bc, 21, 10, 0.5),
                  std::invalid_argument);  // empty interval
  CHECK_THROWS_AS(
      oracle::l1_solve(0.5, 1.0, parse_spatial("x*y"), 0.0, kPi, bc, 21, 10, 0.5),
      std::invalid_argument);  // 2-D initial condition
}

TEST_CASE("a singular implicit system is reported, not masked") {
  // Negative diffusivity tuned so the first pivot of the tridiagonal
  // elimination is 1 + 2r = 0.
  const double h = 0.25;
  const double mu = fracseries::gamma(1.5);  // Gamma(2 - alpha) * dt^alpha at dt = 1
  const double kappa = -0.5 * h * h / mu;
  CHECK_THROWS_AS(
      oracle::l1_solve(0.5, kappa, parse_spatial("sin(x)"), 0.0, 1.0,
                       [](double, double) { return 0.0; }, 5, 1, 1.0),
      std::runtime_error);
}

TEST_CASE("csv emission is self-describing") {
  const auto g = solve_diffusion(0.5, 5, 2, 0.5);
  std::ostringstream out;
  oracle::write_csv(g, out);
  const std::string text = out.str();
  CHECK(text.rfind("t,x,value\n", 0) == 0);
  int lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 1 + g.levels() * g.n_x);
}

}  // TEST_SUITE
