#include "fracseries/reference_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "fracseries/special_functions.hpp"

namespace fracseries::oracle {

namespace {

// Solves the constant tridiagonal system (1 + 2r) on the diagonal, -r off
// it, overwriting rhs with the solution. Classic Thomas elimination; the
// pivot check catches genuinely singular systems (negative diffusivity can
// produce them) instead of dividing through.
void solve_tridiagonal(double r, std::vector<double>& rhs,
                       std::vector<double>& scratch) {
  const std::size_t m = rhs.size();
  const double diag = 1.0 + 2.0 * r;
  scratch.resize(m);
  double pivot = diag;
  if (std::abs(pivot) < 1e-14)
    throw std::runtime_error("l1_solve: singular implicit system");
  scratch[0] = -r / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < m; ++i) {
    pivot = diag + r * scratch[i - 1];
    if (std::abs(pivot) < 1e-14)
      throw std::runtime_error("l1_solve: singular implicit system");
    scratch[i] = -r / pivot;
    rhs[i] = (rhs[i] + r * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

}  // namespace

OracleGrid l1_solve(double alpha, double diffusivity, const Expr& ic,
                    double x0, double x1,
                    const std::function<double(double, double)>& boundary,
                    int n_x, int n_t, double T) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("l1_solve: alpha must lie in (0, 1)");
  if (n_x < 3 || n_x > 2048)
    throw std::invalid_argument("l1_solve: n_x must lie in [3, 2048]");
  if (n_t < 1 || n_t > 8192)
    throw std::invalid_argument("l1_solve: n_t must lie in [1, 8192]");
  if (!(T > 0.0))
    throw std::invalid_argument("l1_solve: T must be positive");
  if (!(x1 > x0))
    throw std::invalid_argument("l1_solve: empty spatial domain");
  if (ic.dimension() != 1)
    throw std::invalid_argument("l1_solve: initial condition must be 1-D");
  if (!boundary)
    throw std::invalid_argument("l1_solve: boundary function required");

  OracleGrid g;
  g.alpha = alpha;
  g.n_x = n_x;
  g.n_t = n_t;

  const double h = (x1 - x0) / (n_x - 1);
  const double dt = T / n_t;
  g.x.resize(n_x);
  for (int i = 0; i < n_x; ++i) g.x[i] = x0 + i * h;
  g.t.resize(n_t + 1);
  for (int n = 0; n <= n_t; ++n) g.t[n] = n * dt;

  g.values.assign(static_cast<std::size_t>(n_t + 1) * n_x, 0.0);
  for (int i = 0; i < n_x; ++i) g.values[i] = ic.eval({g.x[i]});

  // L1 weights and their first differences. All of b is positive and
  // strictly decreasing, so every history coefficient below is >= 0.
  std::vector<double> b(n_t), d(n_t > 1 ? n_t - 1 : 0);
  for (int j = 0; j < n_t; ++j)
    b[j] = std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j),
                                                     1.0 - alpha);
  for (int j = 0; j + 1 < n_t; ++j) d[j] = b[j] - b[j + 1];

  const double mu = gamma(2.0 - alpha) * std::pow(dt, alpha);
  const double r = mu * diffusivity / (h * h);

  const int interior = n_x - 2;
  std::vector<double> rhs(interior), scratch;
  std::vector<double> history(n_x);

  for (int n = 1; n <= n_t; ++n) {
    // Summation-by-parts form of the Caputo history:
    //   rhs = sum_{m=1}^{n-1} (b_{n-1-m} - b_{n-m}) v^m + b_{n-1} v^0.
    double* level0 = g.values.data();
    for (int i = 0; i < n_x; ++i) history[i] = b[n - 1] * level0[i];
    for (int m = 1; m <= n - 1; ++m) {
      const double w = d[n - 1 - m];
      const double* vm = g.values.data() + static_cast<std::size_t>(m) * n_x;
      for (int i = 0; i < n_x; ++i) history[i] += w * vm[i];
    }

    const double tn = g.t[n];
    const double left = boundary(g.x[0], tn);
    const double right = boundary(g.x[n_x - 1], tn);

    for (int i = 0; i < interior; ++i) rhs[i] = history[i + 1];
    rhs[0] += r * left;
    rhs[interior - 1] += r * right;

    solve_tridiagonal(r, rhs, scratch);

    double* level = g.values.data() + static_cast<std::size_t>(n) * n_x;
    level[0] = left;
    for (int i = 0; i < interior; ++i) level[i + 1] = rhs[i];
    level[n_x - 1] = right;
  }

  return g;
}

}  // namespace fracseries::oracle
