#pragma once

// Natural Transform layer: the two-parameter transform
//     V(s, u) = (1/u) * integral_0^inf exp(-s t / u) v(t) dt,
// which specializes to Laplace at u = 1 and Sumudu at s = 1. The solver only
// ever meets fractional-rational images — finite sums of c * u^b / s^(b+1)
// atoms — so images are stored exactly in that shape, with exponents kept as
// offset + (integer) * alpha so lattice arithmetic never goes through
// floating-point exponent comparisons.

#include <functional>
#include <string>
#include <vector>

#include "fracseries/series_algebra.hpp"

namespace fracseries {

/// Exponent b of an image atom c * u^b / s^(b+1), stored as
/// offset + alpha_steps * alpha. Integer steps make multiplication by
/// (u^alpha/s^alpha) exact bookkeeping rather than float arithmetic.
struct ImageExponent {
  double offset = 0.0;
  int alpha_steps = 0;

  double value(double alpha) const { return offset + alpha_steps * alpha; }
  bool same_form(const ImageExponent& o) const {
    return offset == o.offset && alpha_steps == o.alpha_steps;
  }
};

struct ImageAtom {
  double coeff = 0.0;
  ImageExponent beta;
};

/// Finite sum of image atoms. Invariants: atoms are sorted by exponent value,
/// exponents are strictly increasing (no duplicates), no zero coefficients.
class TransformImage {
 public:
  /// Normalizes: merges atoms with identical exponent form exactly, merges
  /// numerically equal exponent values (tolerance 1e-12), drops atoms with
  /// |coeff| <= drop_tol (zero coefficients are always dropped).
  TransformImage(double alpha, std::vector<ImageAtom> atoms,
                 double drop_tol = 0.0);

  static TransformImage zero(double alpha) { return {alpha, {}}; }

  double alpha() const { return alpha_; }
  const std::vector<ImageAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  /// Numeric value of the image at (s, u).
  double value_at(double s, double u) const;

  /// Image multiplied by (u^alpha / s^alpha)^steps: every exponent shifts by
  /// the integer step count; coefficients are untouched.
  TransformImage shifted(int steps) const;

  /// e.g. "1*u^0.5/s^1.5 + ..." with exponents resolved numerically.
  std::string render() const;

 private:
  double alpha_;
  std::vector<ImageAtom> atoms_;
};

/// Time signal for the numeric forward transform, with the admissibility
/// metadata |v(t)| <= M * exp(t / tau).
struct TimeSignal {
  std::function<double(double)> f;
  double M = 1e3;
  double tau = 1e3;
};

/// Value and estimated quadrature error of a numeric forward transform.
struct ForwardResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Numeric Natural Transform by composite 16-point Gauss-Legendre quadrature
/// on [0, 40*u/s]; the estimate is the coarse/fine (panels vs 2*panels)
/// difference. Throws std::domain_error when s/u <= 1/tau (divergent) or the
/// growth bound fails at a quadrature node.
ForwardResult nt_forward_numeric(const TimeSignal& f, double s, double u,
                                 int panels = 48);

/// Image of t^beta / Gamma(beta + 1): the single atom (1, beta). beta enters
/// the exponent's offset part (no alpha dependence).
TransformImage nt_of_power(double beta, double alpha = 1.0);

/// Image of the Caputo derivative: (s^alpha/u^alpha) V - (s^(alpha-1)/u^alpha) v0,
/// simplified back into atoms; coefficients cancelling below 1e-14 are
/// dropped. Throws std::domain_error for alpha outside (0, 1] and
/// std::runtime_error if a (non-cancelled) exponent leaves the admissible
/// range (beta < 0), i.e. the image left the fractional-rational class.
TransformImage nt_caputo_image(const TransformImage& V, double alpha,
                               double v0);

/// Time-domain description sum_k c_k t^(beta_k) / Gamma(beta_k + 1) produced
/// by table-driven inversion (linearity + power-atom lookup).
struct InvertedSignal {
  double alpha = 1.0;
  std::vector<std::pair<double, ImageExponent>> terms;  // (c_k, beta_k)

  double eval(double t) const;
  std::string render() const;
  /// Term-wise forward transform; reproduces the source image atom-for-atom.
  TransformImage to_image() const;
};

/// Inverse transform by linearity and table lookup (the only images the
/// method produces are fractional-rational, so no contour integral is
/// needed or implemented).
InvertedSignal nt_invert(const TransformImage& V);

/// Image of a fractional power series whose coefficients are all constants:
/// sum_k a_k Gamma(k alpha + 1) * u^(k alpha) / s^(k alpha + 1). Throws
/// std::invalid_argument if any coefficient is non-constant.
TransformImage image_of_constant_series(const FracSeries& v);

}  // namespace fracseries
