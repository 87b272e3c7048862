#pragma once

#include <optional>
#include <vector>

#include "fracseries/problem.hpp"
#include "fracseries/series_algebra.hpp"
#include "fracseries/spatial_expr.hpp"

namespace fracseries {

/// Closed form phi(x) * E_alpha(lambda * t^alpha) recognized in a series.
struct ClosedForm {
  double lambda = 0.0;
  Expr profile = Expr::zero(1);
};

/// Result of running the hybrid transform/perturbation recursion.
struct SolutionBundle {
  /// One fractional power series per component, truncation order N.
  std::vector<FracSeries> series;
  /// Advisory pattern detection per component; never feeds back into the
  /// computation.
  std::vector<std::optional<ClosedForm>> closed_forms;
  /// step_norms[c][n]: crude sup-norm proxy for iterate n of component c
  /// (sum over series slots of the max coefficient magnitude on the
  /// standard sampling box). Useful for convergence diagnostics.
  std::vector<std::vector<double>> step_norms;
  /// Truncation order N the bundle was built with.
  int truncation = 0;
};

/// n-th He polynomial of a multilinear monomial.
///
/// iterates[c][i] is the i-th perturbation iterate of component c as a
/// spatial profile. The result is
///   H_n = coeff * sum over compositions i_1+...+i_r = n of
///         prod_j D^{orders_j} iterates[c_j][i_j]
/// with like terms merged, e.g. for v^3 and n=1 this yields 3*v0^2*v1.
///
/// Throws std::invalid_argument when a referenced component has fewer than
/// n+1 iterates available.
Expr he_polynomials(const NonlinearMonomial& monomial,
                    const std::vector<std::vector<Expr>>& iterates, int n);

/// Runs the recursion to truncation order N >= 1.
///
/// Iterate 0 per component is the initial condition plus the order-alpha
/// fractional integral of its source; iterate n+1 is the fractional
/// integral of the linear terms and He polynomials evaluated on iterates
/// <= n. Coupled components advance in lockstep. The assembled series'
/// order-0 coefficient is structurally the initial condition.
///
/// Requires spec.alpha to be set (in (0,1]).
SolutionBundle iterate(const ProblemSpec& spec, int N);

/// Tries to recognize s as phi(x) * E_alpha(lambda * t^alpha).
///
/// lambda is fitted from the ratio of the first two coefficients at a
/// sampling point where the leading coefficient is nonnegligible, then
/// every coefficient is checked against lambda^k / Gamma(k*alpha+1) * phi
/// under sampling equality (tolerance 1e-9). Returns nothing when the
/// pattern fails; a constant series yields (0, a0).
std::optional<ClosedForm> detect_closed_form(const FracSeries& s);

/// Evaluates |D_t^alpha u - RHS(u)| for each component of a solution
/// bundle, with both sides kept in series form (levels <= up_to) until the
/// final pointwise evaluation. Building one of these precomputes the
/// series; each call is then a cheap evaluation, which is what the bulk
/// CSV writers want.
class ResidualEvaluator {
 public:
  /// up_to < 0 means the bundle's truncation order.
  ResidualEvaluator(const ProblemSpec& spec, const SolutionBundle& sol,
                    int up_to = -1);

  double operator()(int component, const std::vector<double>& point,
                    double t) const;

  int components() const { return static_cast<int>(lhs_.size()); }

 private:
  std::vector<FracSeries> lhs_;
  std::vector<FracSeries> rhs_;
  int up_to_;
};

/// One-shot residual of a single component at (point, t).
///
/// up_to < 0 evaluates through the bundle's truncation order; levels below
/// the truncation cancel by construction, so the default measures the
/// leading dropped tail term.
double residual(const ProblemSpec& spec, const SolutionBundle& sol,
                int component, const std::vector<double>& point, double t,
                int up_to = -1);

/// Residuals of all components at (point, t).
std::vector<double> residual_all(const ProblemSpec& spec,
                                 const SolutionBundle& sol,
                                 const std::vector<double>& point, double t,
                                 int up_to = -1);

}  // namespace fracseries
