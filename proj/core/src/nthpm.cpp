#include "fracseries/nthpm.hpp"

#include <cmath>
#include <stdexcept>

#include "fracseries/special_functions.hpp"

namespace fracseries {

namespace {

// Calls fn(indices) for every vector of r nonnegative integers summing to n.
template <typename F>
void compositions_rec(int n, std::size_t slot, std::vector<int>& idx, F& fn) {
  if (slot + 1 == idx.size()) {
    idx[slot] = n;
    fn(idx);
    return;
  }
  for (int i = 0; i <= n; ++i) {
    idx[slot] = i;
    compositions_rec(n - i, slot + 1, idx, fn);
  }
}

template <typename F>
void for_each_composition(int n, std::size_t r, F fn) {
  std::vector<int> idx(r, 0);
  compositions_rec(n, 0, idx, fn);
}

Expr diff_orders(Expr e, const std::array<int, 3>& orders) {
  for (int var = 0; var < 3; ++var)
    if (orders[var] > 0) e = diff(e, var, orders[var]);
  return e;
}

FracSeries diff_orders(FracSeries v, const std::array<int, 3>& orders) {
  for (int var = 0; var < 3; ++var)
    if (orders[var] > 0) v = spatial_derivative(v, var, orders[var]);
  return v;
}

bool series_is_zero(const FracSeries& v) {
  for (const Expr& c : v.coeffs)
    if (!c.is_zero()) return false;
  return true;
}

// He polynomial contribution of one monomial at perturbation order n, with
// full series iterates: same composition sum as the Expr-level form, with
// Cauchy products. Truncated to N to keep growth bounded.
FracSeries he_series(const NonlinearMonomial& m,
                     const std::vector<std::vector<FracSeries>>& iterates,
                     int n, int N) {
  const double alpha = iterates[m.factors[0].component][0].alpha;
  const int dim = iterates[m.factors[0].component][0].dim;
  FracSeries acc = FracSeries::zero(alpha, dim);
  for_each_composition(n, m.factors.size(), [&](const std::vector<int>& idx) {
    FracSeries p = diff_orders(iterates[m.factors[0].component][idx[0]],
                               m.factors[0].orders);
    for (std::size_t j = 1; j < m.factors.size(); ++j) {
      p = truncate(
          product(p, diff_orders(iterates[m.factors[j].component][idx[j]],
                                 m.factors[j].orders)),
          N);
    }
    acc = add(acc, p);
  });
  return scale_series(m.coeff, acc);
}

double series_step_norm(const FracSeries& v,
                        const std::vector<std::vector<double>>& pts) {
  double total = 0.0;
  for (const Expr& c : v.coeffs) {
    double m = 0.0;
    for (const auto& p : pts) m = std::max(m, std::abs(c.eval(p)));
    total += m;
  }
  return total;
}

}  // namespace

Expr he_polynomials(const NonlinearMonomial& monomial,
                    const std::vector<std::vector<Expr>>& iterates, int n) {
  if (n < 0) throw std::invalid_argument("he_polynomials: n must be >= 0");
  if (monomial.factors.empty())
    throw std::invalid_argument("he_polynomials: monomial has no factors");
  for (const MonomialFactor& f : monomial.factors) {
    if (f.component < 0 ||
        f.component >= static_cast<int>(iterates.size()) ||
        static_cast<int>(iterates[f.component].size()) <= n)
      throw std::invalid_argument(
          "he_polynomials: iterates must be supplied up to index n for every "
          "component in the monomial");
  }
  const int dim = iterates[monomial.factors[0].component][0].dimension();
  Expr acc = Expr::zero(dim);
  for_each_composition(
      n, monomial.factors.size(), [&](const std::vector<int>& idx) {
        Expr p = diff_orders(iterates[monomial.factors[0].component][idx[0]],
                             monomial.factors[0].orders);
        for (std::size_t j = 1; j < monomial.factors.size(); ++j)
          p = mul(p,
                  diff_orders(iterates[monomial.factors[j].component][idx[j]],
                              monomial.factors[j].orders));
        acc = add(acc, p);
      });
  return scale(monomial.coeff, acc);
}

SolutionBundle iterate(const ProblemSpec& spec, int N) {
  validate(spec);
  if (N < 1) throw std::invalid_argument("iterate: N must be >= 1");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
    throw std::invalid_argument(
        "iterate: spec.alpha must be set to a value in (0, 1]");
  const double alpha = spec.alpha;
  const int dim = spec.dim;
  const std::size_t C = spec.components.size();

  // Iterate 0: initial condition plus fractional integral of the source.
  std::vector<std::vector<FracSeries>> iter(C);
  for (std::size_t c = 0; c < C; ++c) {
    FracSeries v0 = FracSeries::from_initial(alpha, spec.initial_conditions[c]);
    FracSeries src = FracSeries::zero(alpha, dim);
    if (!spec.sources.empty()) {
      const FracSeries& s = spec.sources[c];
      if (!series_is_zero(s)) {
        if (s.alpha != alpha)
          throw std::invalid_argument(
              "iterate: source lattice does not match spec.alpha");
        if (s.dim != dim)
          throw std::invalid_argument(
              "iterate: source dimension does not match the problem");
        src = add(src, s);
      }
    }
    if (spec.equations[c].source_constant != 0.0)
      src = add(src, FracSeries::from_initial(
                         alpha, Expr::constant(
                                    spec.equations[c].source_constant, dim)));
    if (!series_is_zero(src)) v0 = add(v0, truncate(frac_integral(src), N));
    iter[c].push_back(std::move(v0));
  }

  // v_{n+1} = I^alpha(linear terms + He polynomials), all components in
  // lockstep: the whole step reads only iterates <= n.
  for (int n = 0; n < N; ++n) {
    std::vector<FracSeries> next;
    next.reserve(C);
    for (std::size_t c = 0; c < C; ++c) {
      const ComponentEquation& eq = spec.equations[c];
      FracSeries contrib = FracSeries::zero(alpha, dim);
      for (const LinearTerm& lt : eq.linear)
        contrib = add(contrib,
                      scale_series(lt.coeff, diff_orders(
                                                 iter[lt.component][n],
                                                 lt.orders)));
      for (const NonlinearMonomial& m : eq.monomials)
        contrib = add(contrib, he_series(m, iter, n, N));
      next.push_back(truncate(frac_integral(contrib), N));
    }
    for (std::size_t c = 0; c < C; ++c) iter[c].push_back(std::move(next[c]));
  }

  SolutionBundle out;
  out.truncation = N;
  out.series.reserve(C);
  out.step_norms.resize(C);
  const auto pts = sampling_points(dim);
  for (std::size_t c = 0; c < C; ++c) {
    FracSeries s = iter[c][0];
    out.step_norms[c].reserve(iter[c].size());
    out.step_norms[c].push_back(series_step_norm(iter[c][0], pts));
    for (std::size_t n = 1; n < iter[c].size(); ++n) {
      s = add(s, iter[c][n]);
      out.step_norms[c].push_back(series_step_norm(iter[c][n], pts));
    }
    out.series.push_back(trimmed(std::move(s)));
  }
  for (const FracSeries& s : out.series)
    out.closed_forms.push_back(detect_closed_form(s));
  return out;
}

std::optional<ClosedForm> detect_closed_form(const FracSeries& s) {
  const FracSeries v = trimmed(s);
  const Expr& a0 = v.coeffs[0];
  if (v.order() == 0) return ClosedForm{0.0, a0};

  const auto pts = sampling_points(v.dim);
  int anchor = -1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(a0.eval(pts[i])) > 1e-6) {
      anchor = static_cast<int>(i);
      break;
    }
  }
  if (anchor < 0) return std::nullopt;

  const double a0v = a0.eval(pts[anchor]);
  const double a1v = v.coeffs[1].eval(pts[anchor]);
  const double lambda = gamma(v.alpha + 1.0) * a1v / a0v;

  for (int k = 1; k <= v.order(); ++k) {
    const double factor =
        lambda == 0.0 ? 0.0
                      : std::pow(lambda, k) / gamma(k * v.alpha + 1.0);
    if (!sampling_equal(v.coeffs[k], scale(factor, a0), 1e-9))
      return std::nullopt;
  }
  return ClosedForm{lambda, a0};
}

ResidualEvaluator::ResidualEvaluator(const ProblemSpec& spec,
                                     const SolutionBundle& sol, int up_to) {
  if (sol.series.size() != spec.components.size())
    throw std::invalid_argument(
        "ResidualEvaluator: bundle does not match the problem's components");
  const int N = sol.truncation;
  up_to_ = up_to < 0 ? N : up_to;
  if (up_to_ > N)
    throw std::invalid_argument(
        "ResidualEvaluator: up_to exceeds the bundle's truncation order");
  const std::size_t C = spec.components.size();
  for (std::size_t c = 0; c < C; ++c) {
    const FracSeries& u = sol.series[c];
    if (spec.alpha != 0.0 && u.alpha != spec.alpha)
      throw std::invalid_argument(
          "ResidualEvaluator: series lattice does not match spec.alpha");
    lhs_.push_back(truncate(caputo_derivative(u), up_to_));

    const ComponentEquation& eq = spec.equations[c];
    FracSeries rhs = FracSeries::zero(u.alpha, u.dim);
    for (const LinearTerm& lt : eq.linear)
      rhs = add(rhs, scale_series(lt.coeff,
                                  diff_orders(sol.series[lt.component],
                                              lt.orders)));
    for (const NonlinearMonomial& m : eq.monomials) {
      FracSeries p = diff_orders(sol.series[m.factors[0].component],
                                 m.factors[0].orders);
      for (std::size_t j = 1; j < m.factors.size(); ++j)
        p = truncate(product(p, diff_orders(sol.series[m.factors[j].component],
                                            m.factors[j].orders)),
                     up_to_);
      rhs = add(rhs, scale_series(m.coeff, p));
    }
    if (!spec.sources.empty() && !series_is_zero(spec.sources[c])) {
      if (spec.sources[c].alpha != u.alpha)
        throw std::invalid_argument(
            "ResidualEvaluator: source lattice does not match the series");
      rhs = add(rhs, spec.sources[c]);
    }
    if (eq.source_constant != 0.0)
      rhs = add(rhs, FracSeries::from_initial(
                         u.alpha,
                         Expr::constant(eq.source_constant, u.dim)));
    rhs_.push_back(truncate(std::move(rhs), up_to_));
  }
}

double ResidualEvaluator::operator()(int component,
                                     const std::vector<double>& point,
                                     double t) const {
  if (component < 0 || component >= static_cast<int>(lhs_.size()))
    throw std::invalid_argument("ResidualEvaluator: unknown component");
  return std::abs(eval_series(lhs_[component], point, t) -
                  eval_series(rhs_[component], point, t));
}

double residual(const ProblemSpec& spec, const SolutionBundle& sol,
                int component, const std::vector<double>& point, double t,
                int up_to) {
  return ResidualEvaluator(spec, sol, up_to)(component, point, t);
}

std::vector<double> residual_all(const ProblemSpec& spec,
                                 const SolutionBundle& sol,
                                 const std::vector<double>& point, double t,
                                 int up_to) {
  ResidualEvaluator eval(spec, sol, up_to);
  std::vector<double> out;
  out.reserve(sol.series.size());
  for (int c = 0; c < eval.components(); ++c)
    out.push_back(eval(c, point, t));
  return out;
}

}  // namespace fracseries
