#include "fracseries/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fracseries/numeric_format.hpp"

namespace fracseries {

int ProblemSpec::component_index(const std::string& name) const {
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i] == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------- equation

namespace {

enum class Tok { Caputo, Ident, Number, Plus, Minus, Star, Equals, LParen,
                 RParen, End };

struct Token {
  Tok type;
  double number = 0.0;
  std::string ident;
  bool has_suffix = false;
  std::array<int, 3> orders{0, 0, 0};
  std::size_t pos = 0;
};

std::array<int, 3> parse_suffix(const std::string& text, std::size_t& i) {
  std::array<int, 3> orders{0, 0, 0};
  ++i;  // consume '_'
  bool any = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == 'x') ++orders[0];
    else if (c == 'y') ++orders[1];
    else if (c == 'z') ++orders[2];
    else break;
    ++i;
    any = true;
  }
  if (!any)
    throw ParseError("derivative suffix needs at least one of x, y, z", i);
  return orders;
}

std::vector<Token> tokenize_equation(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (text.compare(i, 4, "Dt^a") == 0 &&
        (i + 4 >= text.size() ||
         !std::isalnum(static_cast<unsigned char>(text[i + 4])))) {
      t.type = Tok::Caputo;
      i += 4;
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      const char* start = text.c_str() + i;
      char* end = nullptr;
      t.type = Tok::Number;
      t.number = std::strtod(start, &end);
      i += static_cast<std::size_t>(end - start);
      out.push_back(t);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j]))))
        ++j;
      t.type = Tok::Ident;
      t.ident = text.substr(i, j - i);
      i = j;
      if (i < text.size() && text[i] == '_') {
        t.orders = parse_suffix(text, i);
        t.has_suffix = true;
      }
      out.push_back(t);
      continue;
    }
    if (c == '_') {
      // A suffix following ')' applies the derivative to the whole
      // parenthesized expression; it arrives as a name-less token.
      t.type = Tok::Ident;
      t.orders = parse_suffix(text, i);
      t.has_suffix = true;
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '+': t.type = Tok::Plus; break;
      case '-': t.type = Tok::Minus; break;
      case '*': t.type = Tok::Star; break;
      case '=': t.type = Tok::Equals; break;
      case '(': t.type = Tok::LParen; break;
      case ')': t.type = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
    out.push_back(t);
  }
  Token end;
  end.type = Tok::End;
  end.pos = text.size();
  out.push_back(end);
  return out;
}

// Multilinear polynomial over component-derivative symbols: the intermediate
// form in which derivative suffixes distribute and like terms merge.
struct PTerm {
  double coeff = 1.0;
  std::vector<MonomialFactor> factors;  // kept sorted
};
using Poly = std::vector<PTerm>;

bool factor_less(const MonomialFactor& a, const MonomialFactor& b) {
  if (a.component != b.component) return a.component < b.component;
  return a.orders < b.orders;
}

bool factors_equal(const std::vector<MonomialFactor>& a,
                   const std::vector<MonomialFactor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].component != b[i].component || a[i].orders != b[i].orders)
      return false;
  return true;
}

bool term_less(const PTerm& a, const PTerm& b) {
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size();
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].component != b.factors[i].component)
      return a.factors[i].component < b.factors[i].component;
    if (a.factors[i].orders != b.factors[i].orders)
      return a.factors[i].orders < b.factors[i].orders;
  }
  return false;
}

Poly poly_normalize(Poly p) {
  for (PTerm& t : p) std::sort(t.factors.begin(), t.factors.end(), factor_less);
  std::sort(p.begin(), p.end(), term_less);
  Poly out;
  for (PTerm& t : p) {
    if (!out.empty() && factors_equal(out.back().factors, t.factors))
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const PTerm& t) { return t.coeff == 0.0; }),
            out.end());
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  a.insert(a.end(), b.begin(), b.end());
  return poly_normalize(std::move(a));
}

Poly poly_scale(Poly a, double c) {
  for (PTerm& t : a) t.coeff *= c;
  return poly_normalize(std::move(a));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const PTerm& ta : a)
    for (const PTerm& tb : b) {
      PTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.push_back(std::move(t));
    }
  return poly_normalize(std::move(out));
}

// Product-rule derivative of the polynomial with respect to one variable.
Poly poly_diff(const Poly& p, int var) {
  Poly out;
  for (const PTerm& t : p) {
    for (std::size_t j = 0; j < t.factors.size(); ++j) {
      PTerm d = t;
      d.factors[j].orders[var] += 1;
      out.push_back(std::move(d));
    }
    // Terms with no factors are constants: derivative vanishes.
  }
  return poly_normalize(std::move(out));
}

class EquationParser {
 public:
  EquationParser(std::vector<Token> toks,
                 const std::vector<std::string>& components)
      : toks_(std::move(toks)), components_(components) {}

  std::pair<int, ComponentEquation> parse() {
    expect(Tok::Caputo, "'Dt^a'");
    const Token lhs = cur();
    expect(Tok::Ident, "a component name after Dt^a");
    if (lhs.has_suffix)
      throw ParseError("the Caputo term takes a bare component name",
                       lhs.pos);
    const int comp = lookup(lhs);
    expect(Tok::Equals, "'='");
    Poly rhs = parse_expr();
    expect(Tok::End, "end of equation");
    return {comp, classify(std::move(rhs))};
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  void advance() { ++i_; }
  bool accept(Tok t) {
    if (cur().type == t) {
      advance();
      return true;
    }
    return false;
  }
  void expect(Tok t, const char* what) {
    if (cur().type != t)
      throw ParseError(std::string("expected ") + what, cur().pos);
    advance();
  }

  int lookup(const Token& t) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (components_[i] == t.ident) return static_cast<int>(i);
    throw ParseError("unknown component '" + t.ident + "'", t.pos);
  }

  Poly parse_expr() {
    bool negate = false;
    if (accept(Tok::Minus))
      negate = true;
    else
      accept(Tok::Plus);
    Poly acc = parse_term();
    if (negate) acc = poly_scale(std::move(acc), -1.0);
    while (cur().type == Tok::Plus || cur().type == Tok::Minus) {
      const bool minus = cur().type == Tok::Minus;
      advance();
      Poly t = parse_term();
      if (minus) t = poly_scale(std::move(t), -1.0);
      acc = poly_add(std::move(acc), t);
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    while (accept(Tok::Star)) acc = poly_mul(acc, parse_factor());
    return acc;
  }

  Poly parse_factor() {
    const Token t = cur();
    switch (t.type) {
      case Tok::Number: {
        advance();
        PTerm c;
        c.coeff = t.number;
        return {c};
      }
      case Tok::Ident: {
        if (t.ident.empty())
          throw ParseError("derivative suffix must follow a component or ')'",
                           t.pos);
        advance();
        PTerm m;
        MonomialFactor f;
        f.component = lookup(t);
        f.orders = t.orders;
        m.factors.push_back(f);
        return {m};
      }
      case Tok::LParen: {
        advance();
        Poly inner = parse_expr();
        expect(Tok::RParen, "')'");
        // A derivative suffix on the closing paren distributes over the
        // inner expression by the sum and product rules, right here.
        if (peek_suffix()) {
          const Token sfx = suffix_token_;
          for (int var = 0; var < 3; ++var)
            for (int k = 0; k < sfx.orders[var]; ++k)
              inner = poly_diff(inner, var);
        }
        return inner;
      }
      case Tok::Caputo:
        throw ParseError(
            "time derivatives may appear only as the single left-hand "
            "Caputo term",
            t.pos);
      default:
        throw ParseError("expected a number, component or '('", t.pos);
    }
  }

  // A suffix applied to ')' is lexed as a name-less identifier token.
  bool peek_suffix() {
    if (cur().type == Tok::Ident && cur().ident == "" && cur().has_suffix) {
      suffix_token_ = cur();
      advance();
      return true;
    }
    return false;
  }

  ComponentEquation classify(Poly p) {
    ComponentEquation eq;
    for (PTerm& t : p) {
      if (t.factors.empty()) {
        eq.source_constant += t.coeff;
      } else if (t.factors.size() == 1) {
        LinearTerm lt;
        lt.coeff = t.coeff;
        lt.component = t.factors[0].component;
        lt.orders = t.factors[0].orders;
        eq.linear.push_back(lt);
      } else if (t.factors.size() <= 3) {
        NonlinearMonomial m;
        m.coeff = t.coeff;
        m.factors = std::move(t.factors);
        eq.monomials.push_back(std::move(m));
      } else {
        throw ParseError(
            "monomial degree " + std::to_string(t.factors.size()) +
                " exceeds the supported maximum of 3",
            0);
      }
    }
    return eq;
  }

  std::vector<Token> toks_;
  const std::vector<std::string>& components_;
  std::size_t i_ = 0;
  Token suffix_token_;
};

}  // namespace

std::pair<int, ComponentEquation> parse_equation(
    const std::string& text, const std::vector<std::string>& components) {
  auto toks = tokenize_equation(text);
  return EquationParser(std::move(toks), components).parse();
}

// ----------------------------------------------------------------- renderer

namespace {

std::string suffix_string(const std::array<int, 3>& orders) {
  std::string s;
  for (int v = 0; v < 3; ++v)
    for (int k = 0; k < orders[v]; ++k) s += "xyz"[v];
  if (s.empty()) return "";
  return "_" + s;
}

std::string factor_string(const MonomialFactor& f,
                          const std::vector<std::string>& components) {
  return components[f.component] + suffix_string(f.orders);
}

}  // namespace

std::string render_equation(const ComponentEquation& eq,
                            const std::vector<std::string>& components,
                            int lhs_component) {
  std::string out = "Dt^a " + components[lhs_component] + " =";
  bool first = true;
  auto emit = [&](double coeff, const std::string& body) {
    if (coeff == 0.0) return;
    const bool neg = coeff < 0.0;
    const double mag = std::abs(coeff);
    if (first) {
      out += neg ? " -" : " ";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    if (body.empty()) {
      out += format_double(mag);
    } else if (mag == 1.0) {
      out += body;
    } else {
      out += format_double(mag) + "*" + body;
    }
  };
  for (const LinearTerm& lt : eq.linear) {
    MonomialFactor f{lt.component, lt.orders};
    emit(lt.coeff, factor_string(f, components));
  }
  for (const NonlinearMonomial& m : eq.monomials) {
    std::string body;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (i) body += "*";
      body += factor_string(m.factors[i], components);
    }
    emit(m.coeff, body);
  }
  emit(eq.source_constant, "");
  if (first) out += " 0";
  return out;
}

// ---------------------------------------------------------------- validation

void validate(const ProblemSpec& spec) {
  if (spec.components.empty())
    throw std::invalid_argument("ProblemSpec: no components");
  if (spec.equations.size() != spec.components.size())
    throw std::invalid_argument("ProblemSpec: every component needs an equation");
  if (spec.initial_conditions.size() != spec.components.size())
    throw std::invalid_argument(
        "ProblemSpec: every component needs an initial condition");
  if (spec.alpha != 0.0 && !(spec.alpha > 0.0 && spec.alpha <= 1.0))
    throw std::invalid_argument("ProblemSpec: alpha must lie in (0, 1]");
  if (spec.dim < 1 || spec.dim > 3)
    throw std::invalid_argument("ProblemSpec: dimension must be 1..3");
  const int n = static_cast<int>(spec.components.size());
  for (const Expr& ic : spec.initial_conditions)
    if (ic.dimension() != spec.dim)
      throw std::invalid_argument(
          "ProblemSpec: initial-condition dimension mismatch");
  for (const ComponentEquation& eq : spec.equations) {
    for (const LinearTerm& lt : eq.linear)
      if (lt.component < 0 || lt.component >= n)
        throw std::invalid_argument("ProblemSpec: linear term names unknown component");
    for (const NonlinearMonomial& m : eq.monomials) {
      if (m.factors.size() < 2 || m.factors.size() > 3)
        throw std::invalid_argument(
            "ProblemSpec: monomial degree must be 2 or 3");
      for (const MonomialFactor& f : m.factors)
        if (f.component < 0 || f.component >= n)
          throw std::invalid_argument(
              "ProblemSpec: monomial names unknown component");
    }
  }
  if (!spec.sources.empty() &&
      spec.sources.size() != spec.components.size())
    throw std::invalid_argument(
        "ProblemSpec: sources must be absent or one per component");
}

// ---------------------------------------------------------------- file form

namespace {

const char* kReservedNames[] = {"x", "y", "z", "sin", "cos", "exp", "Dt"};

bool reserved_name(const std::string& s) {
  for (const char* r : kReservedNames)
    if (s == r) return true;
  return false;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& msg, std::size_t pos = 0) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + msg, pos);
}

}  // namespace

ProblemSpec parse_problem(std::istream& in, const std::string& name) {
  ProblemSpec spec;
  struct Pending {
    int line;
    std::string text;
  };
  std::vector<Pending> equations;
  std::vector<std::pair<std::string, Pending>> ics;
  bool alpha_seen = false;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    std::istringstream ls(line);
    std::string directive;
    ls >> directive;
    std::string rest = trim(line.substr(directive.size()));

    if (directive == "alpha") {
      char* end = nullptr;
      const double a = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str() || *end != '\0')
        fail(name, lineno, "alpha needs a single numeric value");
      if (alpha_seen) fail(name, lineno, "duplicate alpha directive");
      spec.alpha = a;
      alpha_seen = true;
    } else if (directive == "component") {
      if (rest.empty()) fail(name, lineno, "component needs a name");
      if (reserved_name(rest))
        fail(name, lineno, "component name '" + rest + "' is reserved");
      for (char c : rest)
        if (!std::isalnum(static_cast<unsigned char>(c)))
          fail(name, lineno, "component names are alphanumeric");
      if (!std::isalpha(static_cast<unsigned char>(rest[0])))
        fail(name, lineno, "component names start with a letter");
      if (spec.component_index(rest) >= 0)
        fail(name, lineno, "duplicate component '" + rest + "'");
      spec.components.push_back(rest);
    } else if (directive == "equation") {
      equations.push_back({lineno, rest});
    } else if (directive == "ic") {
      const std::size_t eq = rest.find('=');
      if (eq == std::string::npos)
        fail(name, lineno, "ic syntax is: ic <component> = <expression>");
      const std::string comp = trim(rest.substr(0, eq));
      const std::string expr = trim(rest.substr(eq + 1));
      ics.push_back({comp, {lineno, expr}});
    } else {
      fail(name, lineno, "unknown directive '" + directive + "'");
    }
  }

  if (spec.components.empty()) fail(name, lineno, "no components declared");

  spec.equations.assign(spec.components.size(), ComponentEquation{});
  std::vector<bool> have_eq(spec.components.size(), false);

  int dim = 1;
  for (const Pending& p : equations) {
    std::pair<int, ComponentEquation> parsed;
    try {
      parsed = parse_equation(p.text, spec.components);
    } catch (const ParseError& e) {
      fail(name, p.line, e.message(), e.position());
    }
    if (have_eq[parsed.first])
      fail(name, p.line,
           "duplicate equation for component '" +
               spec.components[parsed.first] + "'");
    have_eq[parsed.first] = true;
    spec.equations[parsed.first] = std::move(parsed.second);
    for (const LinearTerm& lt : spec.equations[parsed.first].linear)
      for (int v = 0; v < 3; ++v)
        if (lt.orders[v] > 0) dim = std::max(dim, v + 1);
    for (const NonlinearMonomial& m : spec.equations[parsed.first].monomials)
      for (const MonomialFactor& f : m.factors)
        for (int v = 0; v < 3; ++v)
          if (f.orders[v] > 0) dim = std::max(dim, v + 1);
  }
  for (std::size_t i = 0; i < spec.components.size(); ++i)
    if (!have_eq[i])
      fail(name, lineno,
           "component '" + spec.components[i] + "' has no equation");

  // First parse pass discovers the dimension each initial condition needs.
  std::vector<int> ic_slot(spec.components.size(), -1);
  for (std::size_t i = 0; i < ics.size(); ++i) {
    const int comp = spec.component_index(ics[i].first);
    if (comp < 0)
      fail(name, ics[i].second.line,
           "ic names unknown component '" + ics[i].first + "'");
    if (ic_slot[comp] >= 0)
      fail(name, ics[i].second.line,
           "duplicate ic for component '" + ics[i].first + "'");
    ic_slot[comp] = static_cast<int>(i);
    try {
      dim = std::max(dim, parse_spatial(ics[i].second.text, 1).dimension());
    } catch (const ParseError& e) {
      fail(name, ics[i].second.line, e.message(), e.position());
    }
  }

  spec.dim = dim;
  spec.initial_conditions.reserve(spec.components.size());
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    if (ic_slot[c] < 0)
      fail(name, lineno,
           "component '" + spec.components[c] + "' has no initial condition");
    const Pending& p = ics[ic_slot[c]].second;
    try {
      spec.initial_conditions.push_back(parse_spatial(p.text, dim));
    } catch (const ParseError& e) {
      fail(name, p.line, e.message(), e.position());
    }
  }

  validate(spec);
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open problem file: " + path);
  return parse_problem(in, path);
}

}  // namespace fracseries
