#pragma once

// Parsed PDE systems in the normal form
//     Dt^a u = (linear terms) + (nonlinear monomials) + source,
// plus the line-oriented problem-file front end. The equation grammar is
//
//     equation    := "Dt^a" IDENT "=" expr
//     expr        := ["+"|"-"] term (("+"|"-") term)*
//     term        := factor ("*" factor)*
//     factor      := NUMBER | derivref | "(" expr ")" derivsuffix?
//     derivref    := IDENT derivsuffix?
//     derivsuffix := "_" ("x"|"y"|"z")+
//
// A derivative suffix on a parenthesized expression distributes through
// sums and products at parse time, so "(v*w)_x" arrives as the two
// monomials v_x*w + v*w_x.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracseries/series_algebra.hpp"
#include "fracseries/spatial_expr.hpp"

namespace fracseries {

/// c * (d^|orders| component / dx^orders): one first-degree term.
struct LinearTerm {
  double coeff = 1.0;
  int component = 0;
  std::array<int, 3> orders{0, 0, 0};  ///< derivative order per variable
};

/// One factor of a nonlinear monomial: a component with derivative orders.
struct MonomialFactor {
  int component = 0;
  std::array<int, 3> orders{0, 0, 0};
};

/// c * product of factors; degree (number of factors) is 2 or 3.
struct NonlinearMonomial {
  double coeff = 1.0;
  std::vector<MonomialFactor> factors;
};

/// Right-hand side of one component's equation in normal form.
struct ComponentEquation {
  std::vector<LinearTerm> linear;
  std::vector<NonlinearMonomial> monomials;
  double source_constant = 0.0;  ///< constant terms appearing in the text
};

/// A full problem: components, equations, initial conditions, order alpha.
struct ProblemSpec {
  double alpha = 0.0;  ///< 0 means "not set" (must come from the caller)
  int dim = 1;
  std::vector<std::string> components;          ///< names, index = id
  std::vector<ComponentEquation> equations;     ///< per component
  std::vector<Expr> initial_conditions;         ///< per component
  std::vector<FracSeries> sources;              ///< per component, may be empty

  int component_index(const std::string& name) const;  ///< -1 if unknown
};

/// Parses one equation line against the given component-name table.
/// Returns the left-hand component index and its normalized right-hand side.
/// Throws ParseError (with position) on syntax errors, unknown component
/// names, time derivatives on the right-hand side, or monomials of degree
/// above 3.
std::pair<int, ComponentEquation> parse_equation(
    const std::string& text, const std::vector<std::string>& components);

/// Canonical text of an equation; parse_equation round-trips it.
std::string render_equation(const ComponentEquation& eq,
                            const std::vector<std::string>& components,
                            int lhs_component);

/// Checks structural invariants: every component has an equation and an
/// initial condition of the right dimension, alpha in (0, 1] when set, all
/// monomial degrees in 2..3. Throws std::invalid_argument on violation.
void validate(const ProblemSpec& spec);

/// Parses the line-oriented problem-file format:
///     # comment
///     alpha 0.5
///     component v
///     equation Dt^a v = v_xx
///     ic v = sin(x)
/// Component names may not shadow x, y, z, sin, cos, exp or Dt.
/// Diagnostics carry "<name>:<line>: message".
ProblemSpec parse_problem(std::istream& in, const std::string& name);

/// Convenience wrapper: opens and parses a problem file.
ProblemSpec load_problem(const std::string& path);

}  // namespace fracseries
