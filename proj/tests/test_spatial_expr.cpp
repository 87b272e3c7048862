#include "fracseries/spatial_expr.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace fracseries;

namespace {

const double kPi = 3.14159265358979323846;

// Central finite difference of e along var at p.
double fd_diff(const Expr& e, const std::vector<double>& p, int var,
               double h = 1e-5) {
  std::vector<double> lo = p, hi = p;
  lo[var] -= h;
  hi[var] += h;
  return (e.eval(hi) - e.eval(lo)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("spatial_expr") {

TEST_CASE("factories normalize degenerate powers and recognize zero") {
  CHECK(Expr::zero(2).is_zero());
  CHECK_FALSE(Expr::one(2).is_zero());
  CHECK(Expr::constant(3.5, 1).constant_value() == 3.5);
  CHECK(Expr::monomial(0, 0, 1).kind() == Expr::Kind::Constant);
  CHECK(Expr::monomial(0, 1, 1).kind() == Expr::Kind::Variable);
  CHECK(Expr::monomial(0, 2, 1).kind() == Expr::Kind::Monomial);
  CHECK(Expr::zero(3).dimension() == 3);
}

TEST_CASE("evaluation composes node semantics exactly") {
  const Expr e3 = Expr::exp_linear(0.0, {1.0, 1.0, 1.0});
  CHECK(e3.eval({0.0, 0.0, 0.0}) == 1.0);
  CHECK(e3.eval({0.3, -0.1, 0.5}) ==
        doctest::Approx(std::exp(0.7)).epsilon(1e-15));

  const Expr sx = Expr::sinusoid(false, 1.0, 0, 1);
  CHECK(sx.eval({kPi / 2.0}) == doctest::Approx(1.0).epsilon(1e-15));

  const Expr sc = mul(sx, Expr::sinusoid(true, 1.0, 0, 1));
  CHECK(sc.eval({kPi / 4.0}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("symbolic derivatives of the basis nodes") {
  const Expr e3 = Expr::exp_linear(0.0, {1.0, 1.0, 1.0});
  CHECK(structurally_equal(diff(e3, 0, 2), e3));

  const Expr sx = Expr::sinusoid(false, 1.0, 0, 1);
  const Expr cx = Expr::sinusoid(true, 1.0, 0, 1);
  CHECK(structurally_equal(diff(sx, 0, 1), cx));
  CHECK(structurally_equal(diff(sx, 0, 2), scale(-1.0, sx)));
  CHECK(structurally_equal(diff(cx, 0, 1), scale(-1.0, sx)));

  // d/dx x^3 = 3 x^2, then 6 x, then 6, then 0.
  const Expr x3 = Expr::monomial(0, 3, 1);
  CHECK(sampling_equal(diff(x3, 0, 1), scale(3.0, Expr::monomial(0, 2, 1))));
  CHECK(sampling_equal(diff(x3, 0, 3), Expr::constant(6.0, 1)));
  CHECK(diff(x3, 0, 4).is_zero());

  // Frequency chain rule.
  const Expr s2x = Expr::sinusoid(false, 2.0, 0, 1);
  CHECK(sampling_equal(diff(s2x, 0, 1),
                       scale(2.0, Expr::sinusoid(true, 2.0, 0, 1))));
}

TEST_CASE("derivatives agree with central finite differences") {
  const std::vector<Expr> cases = {
      Expr::constant(2.5, 3),
      Expr::variable(1, 3),
      Expr::monomial(2, 3, 3),
      Expr::sinusoid(false, 2.0, 0, 3),
      Expr::sinusoid(true, 1.3, 1, 3),
      Expr::exp_linear(0.2, {0.5, -0.3, 0.1}),
      mul(Expr::sinusoid(false, 1.0, 0, 3), Expr::exp_linear(0.0, {0.0, 1.0, 0.0})),
      add(Expr::monomial(0, 2, 3), scale(-2.0, Expr::variable(2, 3))),
  };
  const auto pts = sampling_points(3, 20);
  for (const auto& e : cases) {
    for (int var = 0; var < 3; ++var) {
      const Expr d = diff(e, var, 1);
      for (const auto& p : pts) {
        CHECK(std::abs(d.eval(p) - fd_diff(e, p, var)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("differentiation is linear and obeys the product rule") {
  const Expr a = mul(Expr::sinusoid(false, 1.0, 0, 2),
                     Expr::exp_linear(0.0, {0.0, 1.0}));
  const Expr b = Expr::monomial(0, 2, 2);
  const auto pts = sampling_points(2, 16);

  const Expr dsum = diff(add(a, b), 0, 1);
  const Expr sumd = add(diff(a, 0, 1), diff(b, 0, 1));
  const Expr dprod = diff(mul(a, b), 0, 1);
  const Expr prodrule = add(mul(diff(a, 0, 1), b), mul(a, diff(b, 0, 1)));
  for (const auto& p : pts) {
    CHECK(dsum.eval(p) == doctest::Approx(sumd.eval(p)).epsilon(1e-12));
    CHECK(dprod.eval(p) == doctest::Approx(prodrule.eval(p)).epsilon(1e-12));
  }
}

TEST_CASE("structurally identical terms cancel to the canonical zero") {
  const std::vector<Expr> cases = {
      Expr::sinusoid(false, 1.0, 0, 1),
      Expr::exp_linear(0.0, {1.0, 1.0, 1.0}),
      mul(Expr::sinusoid(false, 1.0, 0, 2), Expr::variable(1, 2)),
      add(Expr::one(1), Expr::monomial(0, 2, 1)),
  };
  for (const auto& e : cases) {
    CHECK(add(e, scale(-1.0, e)).is_zero());
  }
  CHECK(scale(0.0, cases[0]).is_zero());
}

TEST_CASE("light normalization folds constants and drops units") {
  const auto c = as_constant(add(Expr::constant(2.0, 1), Expr::constant(3.0, 1)));
  REQUIRE(c.has_value());
  CHECK(*c == 5.0);

  const Expr sx = Expr::sinusoid(false, 1.0, 0, 1);
  CHECK(structurally_equal(mul(Expr::one(1), sx), sx));
  CHECK(mul(Expr::zero(1), sx).is_zero());

  // Products of sums stay unexpanded.
  const Expr prod = mul(add(sx, Expr::one(1)), sx);
  CHECK(prod.kind() == Expr::Kind::Product);
}

TEST_CASE("sampling equality is weaker than structural equality") {
  const Expr sx = Expr::sinusoid(false, 1.0, 0, 1);
  const Expr cx = Expr::sinusoid(true, 1.0, 0, 1);
  const Expr two_sin_cos = scale(2.0, mul(sx, cx));
  const Expr sin_2x = Expr::sinusoid(false, 2.0, 0, 1);
  CHECK(sampling_equal(two_sin_cos, sin_2x));
  CHECK_FALSE(structurally_equal(two_sin_cos, sin_2x));
  CHECK(compare(two_sin_cos, sin_2x) != 0);
  CHECK_FALSE(sampling_equal(sx, cx));
}

TEST_CASE("split_scalar factors the leading constant") {
  const Expr sx = Expr::sinusoid(false, 1.0, 0, 1);
  auto [c1, core1] = split_scalar(scale(3.0, sx));
  CHECK(c1 == 3.0);
  CHECK(structurally_equal(core1, sx));

  auto [c2, core2] = split_scalar(Expr::constant(-4.0, 1));
  CHECK(c2 == -4.0);
  CHECK(structurally_equal(core2, Expr::one(1)));

  auto [c3, core3] = split_scalar(sx);
  CHECK(c3 == 1.0);
  CHECK(structurally_equal(core3, sx));
}

TEST_CASE("sampling points are deterministic and inside the box") {
  const auto a = sampling_points(2, 32);
  const auto b = sampling_points(2, 32);
  REQUIRE(a.size() == 32);
  CHECK(a == b);
  for (const auto& p : a) {
    REQUIRE(p.size() == 2);
    for (double v : p) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK(sampling_points(1, 8) == sampling_points(1, 8));
}

TEST_CASE("parser handles the profile grammar") {
  CHECK(structurally_equal(parse_spatial("sin(x)"),
                           Expr::sinusoid(false, 1.0, 0, 1)));
  CHECK(structurally_equal(parse_spatial("cos(2*x)"),
                           Expr::sinusoid(true, 2.0, 0, 1)));
  CHECK(parse_spatial("exp(x+y+z)").dimension() == 3);
  CHECK(sampling_equal(parse_spatial("exp(x + y + z)"),
                       Expr::exp_linear(0.0, {1.0, 1.0, 1.0})));
  CHECK(sampling_equal(parse_spatial("2*x^2 - 1"),
                       add(scale(2.0, Expr::monomial(0, 2, 1)),
                           Expr::constant(-1.0, 1))));
  // dim_hint widens the ambient space but never narrows it.
  CHECK(parse_spatial("sin(x)", 3).dimension() == 3);
  CHECK(parse_spatial("x*y", 1).dimension() == 2);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_spatial("sin("), ParseError);
  CHECK_THROWS_AS(parse_spatial("x + "), ParseError);
  CHECK_THROWS_AS(parse_spatial("sin(x*y)"), ParseError);
  CHECK_THROWS_AS(parse_spatial("exp(x*x)"), ParseError);
  CHECK_THROWS_AS(parse_spatial("q + 1"), ParseError);
  try {
    parse_spatial("1 + @");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
    CHECK(e.message().find("position") == std::string::npos);
  }
}

TEST_CASE("render round-trips through the parser") {
  const std::vector<std::string> inputs = {
      "sin(x)",
      "exp(x + y + z)",
      "2*sin(x)*cos(x)",
      "x^2 - 3*x + 1",
      "exp(0.5*x - y)",
      "-sin(2*x)",
  };
  for (const auto& s : inputs) {
    const Expr once = parse_spatial(s);
    const Expr twice = parse_spatial(render(once), once.dimension());
    CHECK(render(twice) == render(once));
    CHECK(sampling_equal(once, twice, 1e-12));
  }
  CHECK(render(parse_spatial("sin(x)")) == "sin(x)");
  CHECK(render(Expr::zero(1)) == "0");
}

}  // TEST_SUITE
