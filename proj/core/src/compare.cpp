#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fracseries/numeric_format.hpp"
#include "fracseries/reference_oracle.hpp"
#include "fracseries/series_algebra.hpp"

namespace fracseries::oracle {

ErrorReport compare(const FracSeries& series, const OracleGrid& grid,
                    int up_to) {
  if (series.dim != 1)
    throw std::invalid_argument("compare: series must be 1-D");
  if (series.alpha != grid.alpha)
    throw std::invalid_argument(
        "compare: series and grid use different lattice orders");
  if (grid.n_x <= 0 || grid.n_t <= 0)
    throw std::invalid_argument("compare: empty grid");

  ErrorReport report;
  report.per_level_max.assign(grid.levels(), 0.0);
  double sum_sq = 0.0;
  std::size_t count = 0;
  std::vector<double> point(1);
  for (int n = 1; n <= grid.n_t; ++n) {
    double level_max = 0.0;
    for (int i = 0; i < grid.n_x; ++i) {
      point[0] = grid.x[i];
      const double err =
          std::abs(eval_series(series, point, grid.t[n], up_to) -
                   grid.at(n, i));
      level_max = std::max(level_max, err);
      sum_sq += err * err;
      ++count;
    }
    report.per_level_max[n] = level_max;
    report.max_abs = std::max(report.max_abs, level_max);
  }
  report.rms = count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
  return report;
}

void write_csv(const OracleGrid& grid, std::ostream& out) {
  out << "t,x,value\n";
  for (int n = 0; n < grid.levels(); ++n)
    for (int i = 0; i < grid.n_x; ++i)
      out << format_double(grid.t[n]) << ',' << format_double(grid.x[i])
          << ',' << format_double(grid.at(n, i)) << '\n';
}

}  // namespace fracseries::oracle
