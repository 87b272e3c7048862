#pragma once

// Arithmetic of truncated fractional power series
//     v(x, t) = sum_{k=0..N} a_k(x) * t^(k*alpha)
// with symbolic spatial coefficients. This is the representation the whole
// solver recursion runs in: the time lattice is always the single-order
// lattice {k*alpha}, which is closed under the three operators the method
// needs (fractional integral, spatial derivatives, products).

#include <string>
#include <vector>

#include "fracseries/spatial_expr.hpp"

namespace fracseries {

struct FracSeries {
  double alpha = 1.0;        ///< lattice order, 0 < alpha <= 1 for the solver
  int dim = 1;               ///< ambient spatial dimension of all coefficients
  std::vector<Expr> coeffs;  ///< a_0 .. a_N (coefficient of t^(k*alpha))

  /// Truncation order N (index of the last stored coefficient).
  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Coefficient a_k; canonical zero beyond the stored range.
  const Expr& at(int k) const;

  static FracSeries zero(double alpha, int dim);
  /// Series whose only term is a_0 = c.
  static FracSeries from_initial(double alpha, Expr c);
};

/// Throws std::invalid_argument unless the series invariants hold
/// (alpha > 0, uniform coefficient dimension).
void validate(const FracSeries& v);

/// Drops trailing canonical-zero coefficients (keeps at least a_0).
FracSeries trimmed(FracSeries v);

/// Keeps only coefficients up to t^(N*alpha).
FracSeries truncate(FracSeries v, int N);

/// Riemann-Liouville integral of order alpha: a_k moves to slot k+1 scaled by
/// Gamma(k*alpha + 1) / Gamma((k+1)*alpha + 1). Output order is N+1.
FracSeries frac_integral(const FracSeries& v);

/// Caputo derivative of order alpha: a_0 is annihilated; a_k (k >= 1) moves
/// to slot k-1 scaled by Gamma(k*alpha + 1) / Gamma((k-1)*alpha + 1).
FracSeries caputo_derivative(const FracSeries& v);

/// Cauchy product; keeps the full order N_v + N_w.
FracSeries product(const FracSeries& v, const FracSeries& w);

/// Applies the symbolic partial derivative to every coefficient.
FracSeries spatial_derivative(const FracSeries& v, int var, int order = 1);

FracSeries add(const FracSeries& v, const FracSeries& w);
FracSeries scale_series(double c, const FracSeries& v);

/// Partial sum sum_{k<=upTo} a_k(point) * t^(k*alpha); upTo < 0 means the
/// full stored order.
double eval_series(const FracSeries& v, const std::vector<double>& point,
                   double t, int upTo = -1);

/// "a0(...) + a1(...)*t^a + a2(...)*t^2a + ..." with alpha kept symbolic.
std::string render(const FracSeries& v);

}  // namespace fracseries
