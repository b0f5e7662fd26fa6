#pragma once

#include "graphflow/errors.hpp"
#include "graphflow/superpoly.hpp"

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace graphflow {

/// Syntax error with a 0-based byte offset into the input.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError("at " + std::to_string(position + 1) + ": " + message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

/// expr := term (("+"|"-") term)*; term := unary (("*"|"/") unary)*;
/// unary := "-" unary | factor; factor := base ("^" integer)?;
/// base := integer | x<k> | xi<k> | name | d[name]/dx<i>dx<j>... | "(" expr ")".
struct Expression {
  enum class Kind { Number, Coordinate, Odd, Symbol, Jet, Add, Sub, Mul, Div, Pow, Neg };

  Kind kind = Kind::Number;
  Rational value;                // Number
  int index = 0;                 // Coordinate / Odd, 1-based as written
  std::string name;              // Symbol / Jet
  std::vector<int> derivatives;  // Jet: 1-based coordinate indices, sorted
  int exponent = 0;              // Pow
  std::vector<ExprPtr> args;

  bool operator==(const Expression& o) const;
};

ExprPtr parse_expression(std::string_view text);
std::string to_string(const Expression& e);

/// Resolves names while converting to a polynomial.
struct SymbolTable {
  enum class Undeclared { Reject, AsFunction, AsParameter };

  int dim = 0;
  std::set<std::string> functions;
  std::set<std::string> parameters;
  Undeclared undeclared = Undeclared::Reject;
};

/// Exact conversion; division only by nonzero constants, negative powers only
/// of constants, coordinates must lie within dim.
SuperPoly to_superpoly(const Expression& e, const SymbolTable& table);
SuperPoly parse_superpoly(std::string_view text, const SymbolTable& table);

}  // namespace graphflow
