#include "fracseries/spatial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracseries/numeric_format.hpp"

namespace fracseries {

struct Expr::Node {
  Kind kind;
  int dim = 1;
  double num = 0.0;      // Constant value / Sinusoid frequency
  int var = -1;          // Variable / Monomial / Sinusoid
  int power = 0;         // Monomial
  bool cosine = false;   // Sinusoid
  double exp_offset = 0.0;
  std::vector<double> exp_coeffs;
  std::vector<Expr> kids;
};

namespace {

using Node = Expr::Node;

std::shared_ptr<const Node> make_node(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int kind_rank(Expr::Kind k) { return static_cast<int>(k); }

int cmp_double(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }
int cmp_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

// ---------------------------------------------------------------- factories

Expr Expr::zero(int dim) {
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  Node n;
  n.kind = Kind::Sum;
  n.dim = dim;
  return Expr(make_node(std::move(n)));
}

Expr Expr::one(int dim) { return constant(1.0, dim); }

Expr Expr::constant(double value, int dim) {
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  if (value == 0.0) return zero(dim);
  Node n;
  n.kind = Kind::Constant;
  n.dim = dim;
  n.num = value;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(int var, int dim) {
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  require(var >= 0 && var < dim, "Expr: variable index out of range");
  Node n;
  n.kind = Kind::Variable;
  n.dim = dim;
  n.var = var;
  return Expr(make_node(std::move(n)));
}

Expr Expr::monomial(int var, int power, int dim) {
  require(power >= 0, "Expr: monomial power must be >= 0");
  if (power == 0) return one(dim);
  if (power == 1) return variable(var, dim);
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  require(var >= 0 && var < dim, "Expr: variable index out of range");
  Node n;
  n.kind = Kind::Monomial;
  n.dim = dim;
  n.var = var;
  n.power = power;
  return Expr(make_node(std::move(n)));
}

Expr Expr::sinusoid(bool cosine, double frequency, int var, int dim) {
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  require(var >= 0 && var < dim, "Expr: variable index out of range");
  if (frequency == 0.0) return cosine ? one(dim) : zero(dim);
  Node n;
  n.kind = Kind::Sinusoid;
  n.dim = dim;
  n.num = frequency;
  n.var = var;
  n.cosine = cosine;
  return Expr(make_node(std::move(n)));
}

Expr Expr::exp_linear(double offset, std::vector<double> coeffs) {
  const int dim = static_cast<int>(coeffs.size());
  require(dim >= 1 && dim <= 3, "Expr: dimension must be 1..3");
  bool all_zero = true;
  for (double c : coeffs) all_zero = all_zero && c == 0.0;
  if (all_zero) return constant(std::exp(offset), dim);
  Node n;
  n.kind = Kind::ExpLinear;
  n.dim = dim;
  n.exp_offset = offset;
  n.exp_coeffs = std::move(coeffs);
  return Expr(make_node(std::move(n)));
}

// ---------------------------------------------------------------- accessors

Expr::Kind Expr::kind() const { return node_->kind; }
int Expr::dimension() const { return node_->dim; }

bool Expr::is_zero() const {
  return node_->kind == Kind::Sum && node_->kids.empty();
}

namespace {
void require_kind(const Expr& e, Expr::Kind k, const char* what) {
  if (e.kind() != k) throw std::logic_error(std::string("Expr: ") + what +
                                            " accessed on wrong node kind");
}
}  // namespace

double Expr::constant_value() const {
  require_kind(*this, Kind::Constant, "constant_value");
  return node_->num;
}
int Expr::var() const {
  if (node_->kind != Kind::Variable && node_->kind != Kind::Monomial &&
      node_->kind != Kind::Sinusoid)
    throw std::logic_error("Expr: var() accessed on wrong node kind");
  return node_->var;
}
int Expr::power() const {
  require_kind(*this, Kind::Monomial, "power");
  return node_->power;
}
bool Expr::is_cosine() const {
  require_kind(*this, Kind::Sinusoid, "is_cosine");
  return node_->cosine;
}
double Expr::frequency() const {
  require_kind(*this, Kind::Sinusoid, "frequency");
  return node_->num;
}
double Expr::exp_offset() const {
  require_kind(*this, Kind::ExpLinear, "exp_offset");
  return node_->exp_offset;
}
const std::vector<double>& Expr::exp_coeffs() const {
  require_kind(*this, Kind::ExpLinear, "exp_coeffs");
  return node_->exp_coeffs;
}
const std::vector<Expr>& Expr::children() const {
  if (node_->kind != Kind::Sum && node_->kind != Kind::Product)
    throw std::logic_error("Expr: children() accessed on a leaf node");
  return node_->kids;
}

// --------------------------------------------------------------- evaluation

double Expr::eval(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != node_->dim)
    throw std::invalid_argument("Expr::eval: point dimension mismatch");
  switch (node_->kind) {
    case Kind::Constant:
      return node_->num;
    case Kind::Variable:
      return point[node_->var];
    case Kind::Monomial: {
      double v = point[node_->var], r = 1.0;
      for (int i = 0; i < node_->power; ++i) r *= v;
      return r;
    }
    case Kind::Sinusoid: {
      const double arg = node_->num * point[node_->var];
      return node_->cosine ? std::cos(arg) : std::sin(arg);
    }
    case Kind::ExpLinear: {
      double arg = node_->exp_offset;
      for (int i = 0; i < node_->dim; ++i)
        arg += node_->exp_coeffs[i] * point[i];
      return std::exp(arg);
    }
    case Kind::Product: {
      double r = 1.0;
      for (const Expr& k : node_->kids) r *= k.eval(point);
      return r;
    }
    case Kind::Sum: {
      double r = 0.0;
      for (const Expr& k : node_->kids) r += k.eval(point);
      return r;
    }
  }
  return 0.0;  // unreachable
}

// --------------------------------------------------------- structural order

int compare(const Expr& a, const Expr& b) {
  if (int c = cmp_int(a.dimension(), b.dimension())) return c;
  if (int c = cmp_int(kind_rank(a.kind()), kind_rank(b.kind()))) return c;
  switch (a.kind()) {
    case Expr::Kind::Constant:
      return cmp_double(a.constant_value(), b.constant_value());
    case Expr::Kind::Variable:
      return cmp_int(a.var(), b.var());
    case Expr::Kind::Monomial:
      if (int c = cmp_int(a.var(), b.var())) return c;
      return cmp_int(a.power(), b.power());
    case Expr::Kind::Sinusoid:
      if (int c = cmp_int(a.var(), b.var())) return c;
      if (int c = cmp_int(a.is_cosine() ? 1 : 0, b.is_cosine() ? 1 : 0))
        return c;
      return cmp_double(a.frequency(), b.frequency());
    case Expr::Kind::ExpLinear: {
      if (int c = cmp_double(a.exp_offset(), b.exp_offset())) return c;
      for (int i = 0; i < a.dimension(); ++i)
        if (int c = cmp_double(a.exp_coeffs()[i], b.exp_coeffs()[i])) return c;
      return 0;
    }
    case Expr::Kind::Product:
    case Expr::Kind::Sum: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      if (int c = cmp_int(static_cast<int>(ka.size()),
                          static_cast<int>(kb.size())))
        return c;
      for (std::size_t i = 0; i < ka.size(); ++i)
        if (int c = compare(ka[i], kb[i])) return c;
      return 0;
    }
  }
  return 0;  // unreachable
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return compare(a, b) == 0;
}

std::optional<double> as_constant(const Expr& e) {
  if (e.is_zero()) return 0.0;
  if (e.kind() == Expr::Kind::Constant) return e.constant_value();
  return std::nullopt;
}

std::pair<double, Expr> split_scalar(const Expr& e) {
  if (auto c = as_constant(e)) return {*c, Expr::one(e.dimension())};
  if (e.kind() == Expr::Kind::Product) {
    const auto& kids = e.children();
    if (!kids.empty() && kids.front().kind() == Expr::Kind::Constant) {
      const double c = kids.front().constant_value();
      if (kids.size() == 2) return {c, kids[1]};
      std::vector<Expr> rest(kids.begin() + 1, kids.end());
      // Children of a normalized product are already sorted; rebuild directly.
      Expr::Node n;
      n.kind = Expr::Kind::Product;
      n.dim = e.dimension();
      n.kids = std::move(rest);
      return {c, Expr(std::make_shared<const Expr::Node>(std::move(n)))};
    }
  }
  return {1.0, e};
}

// ------------------------------------------------------------ normalization

Expr make_sum(std::vector<Expr> terms, int dim) {
  require(dim >= 1 && dim <= 3, "make_sum: dimension must be 1..3");

  double const_acc = 0.0;
  std::vector<std::pair<Expr, double>> groups;  // (core, scalar sum)

  // Flatten one level at a time; children of a Sum are already normalized.
  std::vector<Expr> stack(terms.rbegin(), terms.rend());
  while (!stack.empty()) {
    Expr t = stack.back();
    stack.pop_back();
    require(t.dimension() == dim, "make_sum: operand dimension mismatch");
    if (t.is_zero()) continue;
    if (t.kind() == Expr::Kind::Sum) {
      const auto& kids = t.children();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        stack.push_back(*it);
      continue;
    }
    if (auto c = as_constant(t)) {
      const_acc += *c;
      continue;
    }
    auto [c, core] = split_scalar(t);
    bool found = false;
    for (auto& g : groups) {
      if (compare(g.first, core) == 0) {
        g.second += c;
        found = true;
        break;
      }
    }
    if (!found) groups.emplace_back(std::move(core), c);
  }

  std::vector<Expr> out;
  out.reserve(groups.size() + 1);
  if (const_acc != 0.0) out.push_back(Expr::constant(const_acc, dim));
  for (auto& g : groups) {
    if (g.second == 0.0) continue;
    out.push_back(scale(g.second, g.first));
  }

  if (out.empty()) return Expr::zero(dim);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  Expr::Node n;
  n.kind = Expr::Kind::Sum;
  n.dim = dim;
  n.kids = std::move(out);
  return Expr(std::make_shared<const Expr::Node>(std::move(n)));
}

Expr make_product(std::vector<Expr> factors, int dim) {
  require(dim >= 1 && dim <= 3, "make_product: dimension must be 1..3");

  double scalar = 1.0;
  std::vector<Expr> out;

  std::vector<Expr> stack(factors.rbegin(), factors.rend());
  while (!stack.empty()) {
    Expr f = stack.back();
    stack.pop_back();
    require(f.dimension() == dim, "make_product: operand dimension mismatch");
    if (f.is_zero()) return Expr::zero(dim);
    if (f.kind() == Expr::Kind::Product) {
      const auto& kids = f.children();
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        stack.push_back(*it);
      continue;
    }
    if (auto c = as_constant(f)) {
      scalar *= *c;
      continue;
    }
    out.push_back(std::move(f));
  }

  if (scalar == 0.0) return Expr::zero(dim);
  if (out.empty()) return Expr::constant(scalar, dim);

  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });

  if (scalar == 1.0 && out.size() == 1) return out.front();
  if (scalar != 1.0)
    out.insert(out.begin(), Expr::constant(scalar, dim));
  if (out.size() == 1) return out.front();

  Expr::Node n;
  n.kind = Expr::Kind::Product;
  n.dim = dim;
  n.kids = std::move(out);
  return Expr(std::make_shared<const Expr::Node>(std::move(n)));
}

Expr add(const Expr& a, const Expr& b) {
  return make_sum({a, b}, a.dimension());
}

Expr mul(const Expr& a, const Expr& b) {
  return make_product({a, b}, a.dimension());
}

Expr scale(double c, const Expr& e) {
  const int dim = e.dimension();
  if (c == 0.0 || e.is_zero()) return Expr::zero(dim);
  if (c == 1.0) return e;
  if (e.kind() == Expr::Kind::Sum) {
    // Distribute over sums so coefficient arithmetic stays flat.
    std::vector<Expr> kids;
    kids.reserve(e.children().size());
    for (const Expr& k : e.children()) kids.push_back(scale(c, k));
    return make_sum(std::move(kids), dim);
  }
  return make_product({Expr::constant(c, dim), e}, dim);
}

// ----------------------------------------------------------------- calculus

namespace {

Expr diff1(const Expr& e, int var) {
  const int dim = e.dimension();
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return Expr::zero(dim);
    case Expr::Kind::Variable:
      return e.var() == var ? Expr::one(dim) : Expr::zero(dim);
    case Expr::Kind::Monomial: {
      if (e.var() != var) return Expr::zero(dim);
      const int n = e.power();
      return scale(static_cast<double>(n), Expr::monomial(var, n - 1, dim));
    }
    case Expr::Kind::Sinusoid: {
      if (e.var() != var) return Expr::zero(dim);
      const double c = e.frequency();
      if (e.is_cosine())
        return scale(-c, Expr::sinusoid(false, c, var, dim));
      return scale(c, Expr::sinusoid(true, c, var, dim));
    }
    case Expr::Kind::ExpLinear:
      return scale(e.exp_coeffs()[var], e);
    case Expr::Kind::Sum: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const Expr& k : e.children()) kids.push_back(diff1(k, var));
      return make_sum(std::move(kids), dim);
    }
    case Expr::Kind::Product: {
      const auto& kids = e.children();
      std::vector<Expr> terms;
      terms.reserve(kids.size());
      for (std::size_t j = 0; j < kids.size(); ++j) {
        std::vector<Expr> factors = kids;
        factors[j] = diff1(kids[j], var);
        terms.push_back(make_product(std::move(factors), dim));
      }
      return make_sum(std::move(terms), dim);
    }
  }
  return Expr::zero(dim);  // unreachable
}

}  // namespace

Expr diff(const Expr& e, int var, int order) {
  require(order >= 1, "diff: order must be >= 1");
  require(var >= 0 && var < e.dimension(), "diff: variable index out of range");
  Expr r = e;
  for (int i = 0; i < order; ++i) r = diff1(r, var);
  return r;
}

// ----------------------------------------------------------------- sampling

std::vector<std::vector<double>> sampling_points(int dim, int npoints) {
  require(dim >= 1 && dim <= 3, "sampling_points: dimension must be 1..3");
  // Fixed seed and explicit 53-bit mapping: identical points everywhere.
  std::mt19937_64 rng(0x5EEDCAFEF00DULL);
  std::vector<std::vector<double>> pts(npoints);
  for (auto& p : pts) {
    p.resize(dim);
    for (int i = 0; i < dim; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p[i] = 2.0 * u - 1.0;
    }
  }
  return pts;
}

bool sampling_equal(const Expr& a, const Expr& b, double tol, int npoints) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("sampling_equal: dimension mismatch");
  for (const auto& p : sampling_points(a.dimension(), npoints)) {
    if (std::abs(a.eval(p) - b.eval(p)) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------- rendering

namespace {

const char* var_name(int var) {
  static const char* names[3] = {"x", "y", "z"};
  return names[var];
}

std::string render_factor(const Expr& e);

// Renders a product body (no leading sign handling) from scalar and factors.
std::string render_scaled(double scalar, const Expr& core) {
  std::string out;
  if (scalar != 1.0) {
    out += format_double(scalar);
    if (!(core.kind() == Expr::Kind::Constant)) out += "*";
  }
  if (core.kind() == Expr::Kind::Constant) return out.empty() ? format_double(core.constant_value()) : out;
  if (core.kind() == Expr::Kind::Product) {
    const auto& kids = core.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += "*";
      out += render_factor(kids[i]);
    }
    return out;
  }
  out += render_factor(core);
  return out;
}

std::string render_factor(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return format_double(e.constant_value());
    case Expr::Kind::Variable:
      return var_name(e.var());
    case Expr::Kind::Monomial:
      return std::string(var_name(e.var())) + "^" + std::to_string(e.power());
    case Expr::Kind::Sinusoid: {
      std::string arg;
      if (e.frequency() != 1.0) arg = format_double(e.frequency()) + "*";
      arg += var_name(e.var());
      return std::string(e.is_cosine() ? "cos(" : "sin(") + arg + ")";
    }
    case Expr::Kind::ExpLinear: {
      std::string arg;
      bool first = true;
      if (e.exp_offset() != 0.0) {
        arg += format_double(e.exp_offset());
        first = false;
      }
      for (int i = 0; i < e.dimension(); ++i) {
        const double c = e.exp_coeffs()[i];
        if (c == 0.0) continue;
        if (first) {
          if (c == 1.0)
            arg += var_name(i);
          else if (c == -1.0)
            arg += std::string("-") + var_name(i);
          else
            arg += format_double(c) + "*" + var_name(i);
          first = false;
        } else {
          const double a = std::abs(c);
          arg += c < 0 ? " - " : " + ";
          if (a == 1.0)
            arg += var_name(i);
          else
            arg += format_double(a) + "*" + var_name(i);
        }
      }
      return "exp(" + arg + ")";
    }
    case Expr::Kind::Product:
      return render_scaled(1.0, e);
    case Expr::Kind::Sum:
      return "(" + render(e) + ")";
  }
  return "0";  // unreachable
}

}  // namespace

std::string render(const Expr& e) {
  if (e.is_zero()) return "0";
  if (e.kind() != Expr::Kind::Sum) {
    auto [c, core] = split_scalar(e);
    if (c < 0.0) return "-" + render_scaled(-c, core);
    return render_scaled(c, core);
  }
  std::string out;
  const auto& kids = e.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    auto [c, core] = split_scalar(kids[i]);
    if (i == 0) {
      out += c < 0 ? "-" + render_scaled(-c, core) : render_scaled(c, core);
    } else {
      out += c < 0 ? " - " : " + ";
      out += render_scaled(std::abs(c), core);
    }
  }
  return out;
}

}  // namespace fracseries
