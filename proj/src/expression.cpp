#include "graphflow/expression.hpp"

#include <algorithm>
#include <cctype>

namespace graphflow {

bool Expression::operator==(const Expression& o) const {
  if (kind != o.kind || value != o.value || index != o.index || name != o.name || derivatives != o.derivatives ||
      exponent != o.exponent || args.size() != o.args.size())
    return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!(*args[i] == *o.args[i])) return false;
  return true;
}

namespace {

enum class Tok { Number, Ident, Jet, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t pos = 0;
  std::string text;
  std::vector<int> derivatives;  // Jet
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, i_, "", {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Token next() {
    const std::size_t start = i_;
    const char c = s_[i_];
    // U+2212 minus sign
    if (s_.substr(i_, 3) == "\xE2\x88\x92") {
      i_ += 3;
      return {Tok::Minus, start, "-", {}};
    }
    switch (c) {
      case '+': ++i_; return {Tok::Plus, start, "+", {}};
      case '-': ++i_; return {Tok::Minus, start, "-", {}};
      case '*': ++i_; return {Tok::Star, start, "*", {}};
      case '/': ++i_; return {Tok::Slash, start, "/", {}};
      case '^': ++i_; return {Tok::Caret, start, "^", {}};
      case '(': ++i_; return {Tok::LParen, start, "(", {}};
      case ')': ++i_; return {Tok::RParen, start, ")", {}};
      default: break;
    }
    if (is_digit(c)) {
      while (i_ < s_.size() && is_digit(s_[i_])) ++i_;
      if (i_ < s_.size() && s_[i_] == '.') throw ParseError("decimal numbers are not allowed; use p/q", i_);
      return {Tok::Number, start, std::string(s_.substr(start, i_ - start)), {}};
    }
    if (c == 'd' && i_ + 1 < s_.size() && s_[i_ + 1] == '[') return jet(start);
    if (is_ident_start(c)) {
      while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
      return {Tok::Ident, start, std::string(s_.substr(start, i_ - start)), {}};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  // d[name]/dx<i>dx<j>...
  Token jet(std::size_t start) {
    i_ += 2;
    const std::size_t name_start = i_;
    if (i_ >= s_.size() || !is_ident_start(s_[i_])) throw ParseError("expected a function name after 'd['", i_);
    while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
    std::string name(s_.substr(name_start, i_ - name_start));
    if (i_ >= s_.size() || s_[i_] != ']') throw ParseError("expected ']'", i_);
    ++i_;
    if (i_ >= s_.size() || s_[i_] != '/') throw ParseError("expected '/dx<k>' after jet symbol", i_);
    ++i_;
    std::vector<int> ds;
    while (i_ + 1 < s_.size() && s_[i_] == 'd' && s_[i_ + 1] == 'x') {
      std::size_t num_start = i_ + 2;
      std::size_t j = num_start;
      while (j < s_.size() && is_digit(s_[j])) ++j;
      if (j == num_start) throw ParseError("expected a coordinate index after 'dx'", j);
      int k = std::stoi(std::string(s_.substr(num_start, j - num_start)));
      if (k < 1) throw ParseError("coordinate indices start at 1", num_start);
      ds.push_back(k);
      i_ = j;
    }
    if (ds.empty()) throw ParseError("expected 'dx<k>' after 'd[" + name + "]/'", i_);
    std::sort(ds.begin(), ds.end());
    return {Tok::Jet, start, name, ds};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

ExprPtr make(Expression e) { return std::make_shared<const Expression>(std::move(e)); }

ExprPtr binary(Expression::Kind k, ExprPtr a, ExprPtr b) {
  Expression e;
  e.kind = k;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return is_digit(c); });
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return t_[k_]; }
  const Token& take() { return t_[k_++]; }

  ExprPtr expr() {
    ExprPtr left = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      auto kind = take().kind == Tok::Plus ? Expression::Kind::Add : Expression::Kind::Sub;
      left = binary(kind, left, term());
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      auto kind = take().kind == Tok::Star ? Expression::Kind::Mul : Expression::Kind::Div;
      left = binary(kind, left, unary());
    }
    return left;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      take();
      Expression e;
      e.kind = Expression::Kind::Neg;
      e.args = {unary()};
      return make(std::move(e));
    }
    return factor();
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (peek().kind != Tok::Caret) return b;
    take();
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      take();
      negative = true;
    }
    if (peek().kind != Tok::Number) throw ParseError("exponent must be an integer literal", peek().pos);
    const Token& num = take();
    if (num.text.size() > 6) throw ParseError("exponent too large", num.pos);
    Expression e;
    e.kind = Expression::Kind::Pow;
    e.exponent = std::stoi(num.text) * (negative ? -1 : 1);
    e.args = {b};
    return make(std::move(e));
  }

  ExprPtr base() {
    const Token& tok = take();
    Expression e;
    switch (tok.kind) {
      case Tok::Number:
        e.kind = Expression::Kind::Number;
        e.value = Rational(tok.text);
        return make(std::move(e));
      case Tok::Jet:
        e.kind = Expression::Kind::Jet;
        e.name = tok.text;
        e.derivatives = tok.derivatives;
        return make(std::move(e));
      case Tok::Ident: {
        std::string_view s = tok.text;
        if (s.size() > 2 && s.substr(0, 2) == "xi" && all_digits(s.substr(2))) {
          e.kind = Expression::Kind::Odd;
          e.index = std::stoi(std::string(s.substr(2)));
          if (e.index < 1) throw ParseError("odd variables start at xi1", tok.pos);
        } else if (s.size() > 1 && s[0] == 'x' && all_digits(s.substr(1))) {
          e.kind = Expression::Kind::Coordinate;
          e.index = std::stoi(std::string(s.substr(1)));
          if (e.index < 1) throw ParseError("coordinates start at x1", tok.pos);
        } else {
          e.kind = Expression::Kind::Symbol;
          e.name = tok.text;
        }
        return make(std::move(e));
      }
      case Tok::LParen: {
        ExprPtr inner = expr();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", tok.pos);
      default:
        throw ParseError("unexpected '" + tok.text + "'", tok.pos);
    }
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
};

int precedence(Expression::Kind k) {
  switch (k) {
    case Expression::Kind::Add:
    case Expression::Kind::Sub: return 1;
    case Expression::Kind::Mul:
    case Expression::Kind::Div: return 2;
    case Expression::Kind::Neg: return 3;
    case Expression::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expression& e, int min_prec) {
  std::string s = to_string(e);
  return precedence(e.kind) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string to_string(const Expression& e) {
  using K = Expression::Kind;
  switch (e.kind) {
    case K::Number: return to_string(e.value);
    case K::Coordinate: return "x" + std::to_string(e.index);
    case K::Odd: return "xi" + std::to_string(e.index);
    case K::Symbol: return e.name;
    case K::Jet: {
      std::string s = "d[" + e.name + "]/";
      for (int d : e.derivatives) s += "dx" + std::to_string(d);
      return s;
    }
    case K::Add: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case K::Sub: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case K::Mul: return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case K::Div: return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case K::Neg: return "-" + wrap(*e.args[0], 3);
    case K::Pow: return wrap(*e.args[0], 5) + "^" + std::to_string(e.exponent);
  }
  return "";
}

namespace {

std::optional<Rational> as_constant(const SuperPoly& p) {
  if (p.is_zero()) return Rational(0);
  if (p.size() != 1) return std::nullopt;
  const auto& t = p.terms().front();
  if (t.odd != 0 || !t.mono.empty()) return std::nullopt;
  return t.coeff;
}

SuperPoly symbol(const std::string& name, const SymbolTable& table) {
  const bool is_function = table.functions.count(name) != 0;
  const bool is_parameter = table.parameters.count(name) != 0;
  if (is_function) return SuperPoly::function(table.dim, name);
  if (is_parameter) return SuperPoly::parameter(table.dim, name);
  switch (table.undeclared) {
    case SymbolTable::Undeclared::AsFunction: return SuperPoly::function(table.dim, name);
    case SymbolTable::Undeclared::AsParameter: return SuperPoly::parameter(table.dim, name);
    default: throw InputError("unknown symbol '" + name + "'");
  }
}

}  // namespace

SuperPoly to_superpoly(const Expression& e, const SymbolTable& table) {
  using K = Expression::Kind;
  const int dim = table.dim;
  switch (e.kind) {
    case K::Number: return SuperPoly::constant(dim, e.value);
    case K::Coordinate:
      if (e.index > dim) throw InputError("coordinate x" + std::to_string(e.index) + " exceeds dimension " + std::to_string(dim));
      return SuperPoly::coordinate(dim, e.index - 1);
    case K::Odd:
      if (e.index > dim) throw InputError("odd variable xi" + std::to_string(e.index) + " exceeds dimension " + std::to_string(dim));
      return SuperPoly::odd(dim, e.index - 1);
    case K::Symbol: return symbol(e.name, table);
    case K::Jet: {
      SuperPoly f = symbol(e.name, table);
      if (f.terms().front().mono.factors().front().atom.kind() != Atom::Kind::Jet)
        throw InputError("'" + e.name + "' is a parameter and cannot be differentiated");
      for (int d : e.derivatives) {
        if (d > dim) throw InputError("derivative index dx" + std::to_string(d) + " exceeds dimension");
        f = f.derivative_x(d - 1);
      }
      return f;
    }
    case K::Add: return to_superpoly(*e.args[0], table) + to_superpoly(*e.args[1], table);
    case K::Sub: return to_superpoly(*e.args[0], table) - to_superpoly(*e.args[1], table);
    case K::Mul: return to_superpoly(*e.args[0], table) * to_superpoly(*e.args[1], table);
    case K::Neg: return -to_superpoly(*e.args[0], table);
    case K::Div: {
      auto denom = as_constant(to_superpoly(*e.args[1], table));
      if (!denom) throw InputError("non-polynomial expression: division by a non-constant");
      if (*denom == 0) throw InputError("division by zero");
      return to_superpoly(*e.args[0], table) * Rational(1 / *denom);
    }
    case K::Pow: {
      SuperPoly b = to_superpoly(*e.args[0], table);
      int n = e.exponent;
      if (n < 0) {
        auto c = as_constant(b);
        if (!c) throw InputError("non-polynomial expression: negative power of a non-constant");
        if (*c == 0) throw InputError("division by zero");
        b = SuperPoly::constant(dim, 1 / *c);
        n = -n;
      }
      if (n > 64) throw ResourceError("exponent above 64");
      SuperPoly out = SuperPoly::constant(dim, 1);
      for (int k = 0; k < n; ++k) out = out * b;
      return out;
    }
  }
  return SuperPoly(dim);
}

SuperPoly parse_superpoly(std::string_view text, const SymbolTable& table) {
  return to_superpoly(*parse_expression(text), table);
}

}  // namespace graphflow
