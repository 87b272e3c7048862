#pragma once

// Independent verification path: an implicit L1 finite-difference marcher
// for 1-D time-fractional diffusion, plus the series-vs-grid comparator.
//
// The solver half of this module deliberately shares no code with the
// series machinery: l1_solver.cpp sees only special_functions and
// spatial_expr. The comparator lives in its own translation unit and is the
// one place allowed to evaluate series against the grid.

#include <functional>
#include <iosfwd>
#include <vector>

#include "fracseries/spatial_expr.hpp"

namespace fracseries {
struct FracSeries;  // full definition only needed by the comparator
}

namespace fracseries::oracle {

struct OracleGrid {
  double alpha = 0.5;
  int n_x = 0;  ///< spatial nodes
  int n_t = 0;  ///< time steps; the grid stores n_t + 1 levels incl. t = 0
  std::vector<double> x;       ///< n_x uniform nodes on [x0, x1]
  std::vector<double> t;       ///< n_t + 1 uniform levels, t[0] = 0
  std::vector<double> values;  ///< (n_t + 1) * n_x, level-major

  double at(int level, int i) const {
    return values[static_cast<std::size_t>(level) * n_x + i];
  }
  int levels() const { return n_t + 1; }
};

/// Marches D_t^alpha v = diffusivity * v_xx on [x0, x1] up to time T with
/// the implicit L1 scheme (weights b_j = (j+1)^(1-alpha) - j^(1-alpha),
/// tridiagonal solve per level). Dirichlet boundary values are taken from
/// the supplied reference function so boundary error never pollutes a
/// comparison. Level 0 is the sampled initial condition, exactly.
///
/// Requires alpha in (0, 1), 3 <= n_x <= 2048, 1 <= n_t <= 8192, T > 0 and
/// a 1-D initial condition. Throws std::runtime_error if the implicit
/// system turns out singular (possible for negative diffusivity); that is
/// reported, never masked.
OracleGrid l1_solve(double alpha, double diffusivity, const Expr& ic,
                    double x0, double x1,
                    const std::function<double(double, double)>& boundary,
                    int n_x, int n_t, double T);

/// Pointwise statistics of |series - grid| over all nodes with t > 0.
struct ErrorReport {
  double max_abs = 0.0;
  double rms = 0.0;
  std::vector<double> per_level_max;  ///< one entry per level; [0] = 0
};

/// Compares a solution-series component against an oracle grid. The series
/// is evaluated through coefficient up_to (< 0: full order). Throws
/// std::invalid_argument when lattice orders or dimensions do not match.
ErrorReport compare(const FracSeries& series, const OracleGrid& grid,
                    int up_to = -1);

/// Emits the grid as CSV with header "t,x,value", one row per node.
void write_csv(const OracleGrid& grid, std::ostream& out);

}  // namespace fracseries::oracle
