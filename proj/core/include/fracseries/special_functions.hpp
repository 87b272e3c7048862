#pragma once

// Gamma function, the Gamma-ratio coefficients that drive fractional power
// rules, and the one-parameter Mittag-Leffler function. Everything here is a
// pure function of its arguments and safe to call concurrently.

namespace fracseries {

/// Largest argument for which Gamma(x) is representable in double precision.
inline constexpr double kGammaOverflowX = 171.624;

/// Default |z| bound for the Mittag-Leffler series (direct summation is
/// considered unreliable beyond it).
inline constexpr double kMittagLefflerZMax = 20.0;

/// Gamma(x) for finite x that is not a nonpositive integer.
///
/// Lanczos approximation (g = 7, 9 coefficients) with the reflection formula
/// for x < 0.5; meets relative error <= 1e-12 on (0, 50] with wide margin.
/// Throws std::domain_error at poles (x = 0, -1, -2, ...) and
/// std::overflow_error when x exceeds kGammaOverflowX.
double gamma(double x);

/// log(Gamma(x)) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Gamma(beta + 1) / Gamma(beta + alpha + 1) for beta >= 0, alpha > 0 —
/// the power-rule coefficient of the fractional integral applied to t^beta.
/// Computed in log space, so it stays finite for large beta.
double gamma_ratio(double beta, double alpha);

/// Result of a Mittag-Leffler evaluation.
struct MittagLefflerResult {
  double value = 0.0;
  /// Set when the 400-term cap (or a term-overflow guard) fired before the
  /// stopping rule |term| < 1e-16 * |partial sum| was met.
  bool precision_warning = false;
  int terms_used = 0;
};

/// E_alpha(z) = sum_k z^k / Gamma(alpha*k + 1), direct compensated summation.
///
/// Requires alpha > 0 and |z| <= z_max; throws std::domain_error otherwise.
MittagLefflerResult mittag_leffler_ex(double alpha, double z,
                                      double z_max = kMittagLefflerZMax);

/// Convenience wrapper around mittag_leffler_ex discarding diagnostics.
double mittag_leffler(double alpha, double z,
                      double z_max = kMittagLefflerZMax);

}  // namespace fracseries
