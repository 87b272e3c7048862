#include "fracseries/series_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "fracseries/special_functions.hpp"

namespace fracseries {

const Expr& FracSeries::at(int k) const {
  static const Expr zeros[3] = {Expr::zero(1), Expr::zero(2), Expr::zero(3)};
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return zeros[dim - 1];
  return coeffs[k];
}

FracSeries FracSeries::zero(double alpha, int dim) {
  return FracSeries{alpha, dim, {Expr::zero(dim)}};
}

FracSeries FracSeries::from_initial(double alpha, Expr c) {
  const int dim = c.dimension();
  return FracSeries{alpha, dim, {std::move(c)}};
}

void validate(const FracSeries& v) {
  if (!(v.alpha > 0.0))
    throw std::invalid_argument("FracSeries: alpha must be positive");
  if (v.coeffs.empty())
    throw std::invalid_argument("FracSeries: at least a_0 must be present");
  for (const Expr& c : v.coeffs)
    if (c.dimension() != v.dim)
      throw std::invalid_argument(
          "FracSeries: coefficient dimension mismatch");
}

FracSeries trimmed(FracSeries v) {
  while (v.coeffs.size() > 1 && v.coeffs.back().is_zero()) v.coeffs.pop_back();
  return v;
}

FracSeries truncate(FracSeries v, int N) {
  if (N < 0) throw std::invalid_argument("truncate: N must be >= 0");
  if (static_cast<int>(v.coeffs.size()) > N + 1)
    v.coeffs.erase(v.coeffs.begin() + (N + 1), v.coeffs.end());
  return v;
}

FracSeries frac_integral(const FracSeries& v) {
  validate(v);
  FracSeries out;
  out.alpha = v.alpha;
  out.dim = v.dim;
  out.coeffs.resize(v.coeffs.size() + 1, Expr::zero(v.dim));
  for (int k = 0; k <= v.order(); ++k) {
    // I^alpha t^(k*alpha) = Gamma(k a + 1)/Gamma((k+1) a + 1) t^((k+1) a)
    const double r = gamma_ratio(k * v.alpha, v.alpha);
    out.coeffs[k + 1] = scale(r, v.coeffs[k]);
  }
  return out;
}

FracSeries caputo_derivative(const FracSeries& v) {
  validate(v);
  FracSeries out;
  out.alpha = v.alpha;
  out.dim = v.dim;
  if (v.order() == 0) {
    out.coeffs = {Expr::zero(v.dim)};
    return out;
  }
  out.coeffs.resize(v.coeffs.size() - 1, Expr::zero(v.dim));
  for (int k = 1; k <= v.order(); ++k) {
    // D^alpha t^(k*alpha) = Gamma(k a + 1)/Gamma((k-1) a + 1) t^((k-1) a);
    // the inverse of the integral's power-rule coefficient.
    const double r = 1.0 / gamma_ratio((k - 1) * v.alpha, v.alpha);
    out.coeffs[k - 1] = scale(r, v.coeffs[k]);
  }
  return out;
}

namespace {

void require_compatible(const FracSeries& v, const FracSeries& w,
                        const char* op) {
  if (v.alpha != w.alpha)
    throw std::invalid_argument(std::string(op) +
                                ": series live on different alpha lattices");
  if (v.dim != w.dim)
    throw std::invalid_argument(std::string(op) +
                                ": spatial dimension mismatch");
}

}  // namespace

FracSeries product(const FracSeries& v, const FracSeries& w) {
  validate(v);
  validate(w);
  require_compatible(v, w, "product");
  const int n = v.order() + w.order();
  FracSeries out;
  out.alpha = v.alpha;
  out.dim = v.dim;
  out.coeffs.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::vector<Expr> terms;
    for (int i = std::max(0, k - w.order()); i <= std::min(k, v.order()); ++i)
      terms.push_back(mul(v.coeffs[i], w.coeffs[k - i]));
    out.coeffs.push_back(make_sum(std::move(terms), v.dim));
  }
  return out;
}

FracSeries spatial_derivative(const FracSeries& v, int var, int order) {
  validate(v);
  FracSeries out = v;
  for (Expr& c : out.coeffs) c = diff(c, var, order);
  return out;
}

FracSeries add(const FracSeries& v, const FracSeries& w) {
  validate(v);
  validate(w);
  require_compatible(v, w, "add");
  FracSeries out;
  out.alpha = v.alpha;
  out.dim = v.dim;
  const int n = std::max(v.order(), w.order());
  out.coeffs.reserve(n + 1);
  for (int k = 0; k <= n; ++k) out.coeffs.push_back(fracseries::add(v.at(k), w.at(k)));
  return out;
}

FracSeries scale_series(double c, const FracSeries& v) {
  validate(v);
  FracSeries out = v;
  for (Expr& e : out.coeffs) e = scale(c, e);
  return out;
}

double eval_series(const FracSeries& v, const std::vector<double>& point,
                   double t, int upTo) {
  if (t < 0.0)
    throw std::invalid_argument("eval_series: t must be nonnegative");
  int last = v.order();
  if (upTo >= 0) last = std::min(last, upTo);
  // t^(k*alpha) built multiplicatively; t = 0 contributes only k = 0.
  const double step = std::pow(t, v.alpha);
  double tpow = 1.0;
  double acc = 0.0;
  for (int k = 0; k <= last; ++k) {
    if (k > 0) tpow *= step;
    if (tpow == 0.0 && k > 0) break;
    acc += v.coeffs[k].eval(point) * tpow;
  }
  return acc;
}

std::string render(const FracSeries& v) {
  std::string out;
  bool first = true;
  for (int k = 0; k <= v.order(); ++k) {
    if (v.coeffs[k].is_zero() && v.order() > 0) continue;
    std::string term = "(" + fracseries::render(v.coeffs[k]) + ")";
    if (k == 1) term += "*t^a";
    if (k > 1) term += "*t^" + std::to_string(k) + "a";
    if (!first) out += " + ";
    out += term;
    first = false;
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace fracseries
