#pragma once

// Closed symbolic mini-algebra for spatial profiles: sums and products of
// exponentials of linear forms, sinusoids, monomials and constants, with
// exact differentiation and evaluation. The node set is deliberately small —
// just enough to be closed under the solver's operators — and expressions
// are immutable values that can be shared freely across threads.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracseries {

/// Parse failure with the offending position in the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " +
                           std::to_string(position) + ")"),
        message_(message),
        position_(position) {}

  /// The diagnostic without the position suffix, for re-wrapping.
  const std::string& message() const { return message_; }
  std::size_t position() const { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

class Expr {
 public:
  enum class Kind {
    Constant,   ///< real constant
    Variable,   ///< x_i
    Monomial,   ///< x_i^n, n >= 2 (power 1 normalizes to Variable)
    Sinusoid,   ///< sin(c*x_i) or cos(c*x_i)
    ExpLinear,  ///< exp(offset + sum_i c_i * x_i)
    Product,    ///< n-ary product; constants folded into one leading factor
    Sum,        ///< n-ary sum; the empty sum is the canonical zero
  };

  /// Constructs the canonical zero (an empty sum) of the given dimension.
  static Expr zero(int dim);
  static Expr one(int dim);
  static Expr constant(double value, int dim);
  static Expr variable(int var, int dim);
  /// x_var^power; power 0 folds to 1, power 1 to the bare variable.
  static Expr monomial(int var, int power, int dim);
  /// sin (cosine = false) or cos (cosine = true) of frequency*x_var.
  static Expr sinusoid(bool cosine, double frequency, int var, int dim);
  /// exp(offset + coeffs . x); dimension is coeffs.size().
  static Expr exp_linear(double offset, std::vector<double> coeffs);

  Kind kind() const;
  int dimension() const;

  /// True iff this is the canonical zero (structurally the empty sum).
  bool is_zero() const;

  // Kind-specific accessors (throw std::logic_error on kind mismatch).
  double constant_value() const;                // Constant
  int var() const;                              // Variable/Monomial/Sinusoid
  int power() const;                            // Monomial
  bool is_cosine() const;                       // Sinusoid
  double frequency() const;                     // Sinusoid
  double exp_offset() const;                    // ExpLinear
  const std::vector<double>& exp_coeffs() const;  // ExpLinear
  const std::vector<Expr>& children() const;    // Sum/Product

  /// Numeric value at the given point (size must equal dimension()).
  double eval(const std::vector<double>& point) const;

  /// Opaque node type (defined in the implementation file).
  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend Expr make_sum(std::vector<Expr> terms, int dim);
  friend Expr make_product(std::vector<Expr> factors, int dim);
  friend std::pair<double, Expr> split_scalar(const Expr& e);
};

/// n-ary sum with light normalization: flattens nested sums, folds constants,
/// groups structurally identical terms (summing their scalar multipliers) and
/// drops terms whose multiplier cancels to zero.
Expr make_sum(std::vector<Expr> terms, int dim);

/// n-ary product: flattens nested products, folds constants into one leading
/// scalar, sorts the remaining factors canonically. Products of sums are kept
/// unexpanded.
Expr make_product(std::vector<Expr> factors, int dim);

Expr add(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
/// c * e; distributes over sums so coefficients stay flat.
Expr scale(double c, const Expr& e);

/// Exact symbolic partial derivative of the given order (order >= 1).
Expr diff(const Expr& e, int var, int order = 1);

/// Total structural order: negative/zero/positive like strcmp. Used for
/// canonical child ordering and like-term grouping.
int compare(const Expr& a, const Expr& b);

/// Structural identity (compare == 0). Weaker than mathematical equality:
/// e.g. 2*sin(x)*cos(x) and sin(2*x) are structurally distinct.
bool structurally_equal(const Expr& a, const Expr& b);

/// Splits e into (scalar, core) with e == scalar * core, where core carries
/// no leading constant factor. Constants split as (value, 1).
std::pair<double, Expr> split_scalar(const Expr& e);

/// Value of e when it is constant (a Constant leaf or the canonical zero).
std::optional<double> as_constant(const Expr& e);

/// Deterministic pseudo-random sample points in [-1, 1]^dim, identical on
/// every platform and run (fixed-seed mt19937_64 with an explicit 53-bit
/// mapping to doubles).
std::vector<std::vector<double>> sampling_points(int dim, int npoints = 32);

/// Equality for test purposes: agreement within tol at npoints sample points.
bool sampling_equal(const Expr& a, const Expr& b, double tol = 1e-10,
                    int npoints = 32);

/// Text form; grammar matches parse_spatial (round-trips losslessly).
std::string render(const Expr& e);

/// Parses expression text over variables x, y, z with functions exp (linear
/// form argument), sin and cos (c*variable argument), numeric constants,
/// +, -, *, ^ and parentheses. The ambient dimension is the larger of
/// dim_hint and the highest variable actually used (at least 1).
Expr parse_spatial(const std::string& text, int dim_hint = 0);

}  // namespace fracseries
