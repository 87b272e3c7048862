#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fracseries/spatial_expr.hpp"

// Recursive-descent parser for spatial profile text: numbers, x/y/z,
// exp(<linear form>), sin/cos(<c*variable>), '*', '+', '-', '^', parens,
// and an optional leading sign.

namespace fracseries {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok type;
  double number = 0.0;
  std::string ident;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& text) {
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
             std::isalpha(static_cast<unsigned char>(text[j])))
        ++j;
      t.type = Tok::Ident;
      t.ident = text.substr(i, j - i);
      i = j;
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '+': t.type = Tok::Plus; break;
      case '-': t.type = Tok::Minus; break;
      case '*': t.type = Tok::Star; break;
      case '^': t.type = Tok::Caret; break;
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

int variable_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  return -1;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int dim) : toks_(std::move(toks)), dim_(dim) {}

  Expr parse() {
    Expr e = parse_expr();
    expect(Tok::End, "end of input");
    return e;
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

  Expr parse_expr() {
    bool negate = false;
    if (accept(Tok::Minus))
      negate = true;
    else
      accept(Tok::Plus);
    Expr acc = parse_term();
    if (negate) acc = scale(-1.0, acc);
    std::vector<Expr> terms{acc};
    while (cur().type == Tok::Plus || cur().type == Tok::Minus) {
      const bool minus = cur().type == Tok::Minus;
      advance();
      Expr t = parse_term();
      terms.push_back(minus ? scale(-1.0, t) : t);
    }
    return make_sum(std::move(terms), dim_);
  }

  Expr parse_term() {
    std::vector<Expr> factors{parse_factor()};
    while (accept(Tok::Star)) factors.push_back(parse_factor());
    return make_product(std::move(factors), dim_);
  }

  Expr parse_factor() {
    Expr base = parse_primary();
    if (accept(Tok::Caret)) {
      const Token& t = cur();
      if (t.type != Tok::Number || t.number != std::floor(t.number) ||
          t.number < 0 || t.number > 64)
        throw ParseError("exponent must be a small nonnegative integer",
                         t.pos);
      const int n = static_cast<int>(t.number);
      advance();
      switch (base.kind()) {
        case Expr::Kind::Variable:
          return Expr::monomial(base.var(), n, dim_);
        case Expr::Kind::Monomial:
          return Expr::monomial(base.var(), base.power() * n, dim_);
        case Expr::Kind::Constant:
          return Expr::constant(std::pow(base.constant_value(), n), dim_);
        default:
          if (base.is_zero()) return n == 0 ? Expr::one(dim_) : base;
          throw ParseError("exponent base must be a variable or a number",
                           t.pos);
      }
    }
    return base;
  }

  Expr parse_primary() {
    const Token t = cur();
    switch (t.type) {
      case Tok::Number:
        advance();
        return Expr::constant(t.number, dim_);
      case Tok::LParen: {
        advance();
        Expr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        advance();
        const int v = variable_index(t.ident);
        if (v >= 0) {
          if (v >= dim_)
            throw ParseError("variable '" + t.ident +
                                 "' outside the ambient dimension",
                             t.pos);
          return Expr::variable(v, dim_);
        }
        if (t.ident == "sin" || t.ident == "cos" || t.ident == "exp") {
          expect(Tok::LParen, "'(' after function name");
          Expr arg = parse_expr();
          expect(Tok::RParen, "')'");
          return apply_function(t.ident, arg, t.pos);
        }
        throw ParseError("unknown identifier '" + t.ident + "'", t.pos);
      }
      default:
        throw ParseError("expected a number, variable, function or '('",
                         t.pos);
    }
  }

  Expr apply_function(const std::string& name, const Expr& arg,
                      std::size_t pos) {
    if (name == "exp") {
      double offset = 0.0;
      std::vector<double> coeffs(dim_, 0.0);
      auto absorb = [&](const Expr& term) {
        if (auto c = as_constant(term)) {
          offset += *c;
          return;
        }
        auto [s, core] = split_scalar(term);
        if (core.kind() == Expr::Kind::Variable) {
          coeffs[core.var()] += s;
          return;
        }
        throw ParseError("exp argument must be linear in the variables", pos);
      };
      if (arg.kind() == Expr::Kind::Sum) {
        for (const Expr& k : arg.children()) absorb(k);
      } else {
        absorb(arg);
      }
      return Expr::exp_linear(offset, std::move(coeffs));
    }
    // sin / cos: argument must reduce to frequency * variable.
    auto [s, core] = split_scalar(arg);
    if (core.kind() != Expr::Kind::Variable)
      throw ParseError(
          name + " argument must be a constant multiple of one variable", pos);
    return Expr::sinusoid(name == "cos", s, core.var(), dim_);
  }

  std::vector<Token> toks_;
  int dim_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse_spatial(const std::string& text, int dim_hint) {
  auto toks = tokenize(text);
  int dim = dim_hint;
  for (const Token& t : toks) {
    if (t.type == Tok::Ident) {
      const int v = variable_index(t.ident);
      if (v >= 0) dim = std::max(dim, v + 1);
    }
  }
  if (dim < 1) dim = 1;
  if (dim > 3)
    throw ParseError("ambient dimension exceeds 3", 0);
  return Parser(std::move(toks), dim).parse();
}

}  // namespace fracseries
