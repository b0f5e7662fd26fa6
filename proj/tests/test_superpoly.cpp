#include "doctest.h"
#include "support.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/expression.hpp"
#include "graphflow/poisson_lab.hpp"
#include "graphflow/schouten.hpp"

using namespace graphflow;
using graphflow::testing::Rng;

namespace {

SuperPoly x(int i, int dim = 3) { return SuperPoly::coordinate(dim, i - 1); }
SuperPoly xi(int i, int dim = 3) { return SuperPoly::odd(dim, i - 1); }
int sign(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("odd variables anticommute") {
  CHECK(xi(1) * xi(2) == -(xi(2) * xi(1)));
  CHECK((xi(1) * xi(1)).is_zero());
  CHECK(odd_product_sign(0b10, 0b01) == -1);
  CHECK(odd_product_sign(0b01, 0b01) == 0);
}

TEST_CASE("derivatives") {
  SuperPoly p = x(1) * x(1) * xi(2) * xi(3);
  CHECK(p.derivative_x(0) == Rational(2) * x(1) * xi(2) * xi(3));
  CHECK(p.derivative_odd(1) == x(1) * x(1) * xi(3));
  CHECK(p.derivative_odd(2) == -(x(1) * x(1) * xi(2)));
  CHECK(p.right_derivative_odd(2) == x(1) * x(1) * xi(2));
  SuperPoly f = SuperPoly::function(3, "f");
  CHECK(to_string(f.derivative_x(0).derivative_x(2)) == "d[f]/dx1dx3");
  CHECK(f.derivative_x(0).derivative_x(2) == f.derivative_x(2).derivative_x(0));
}

TEST_CASE("printing is canonical") {
  CHECK(to_string(SuperPoly(3)) == "0");
  CHECK(to_string(Rational(-3, 2) * x(3) + x(1) * xi(1)) == "-3/2*x3 + x1*xi1");
  SymbolTable t;
  t.dim = 3;
  t.undeclared = SymbolTable::Undeclared::AsFunction;
  SuperPoly p = parse_superpoly("d[g]/dx2dx1 * x1^2 - 1/3*xi1*xi2", t);
  CHECK(parse_superpoly(to_string(p), t) == p);
}

TEST_CASE("substitution binds functions and their jets") {
  SuperPoly p = SuperPoly::function(2, "p") * xi(1, 2) * xi(2, 2);
  CHECK(substitute(p, {{"p", SuperPoly::constant(2, 1)}}) == xi(1, 2) * xi(2, 2));
  SymbolTable t;
  t.dim = 3;
  SuperPoly a = SuperPoly::function(3, "a");
  SuperPoly bound = substitute(a.derivative_x(2), {{"a", parse_superpoly("(x1^2 + x2^2 + x3^2)/2", t)}});
  CHECK(bound == x(3));
}

TEST_CASE("Schouten bracket examples") {
  // [[X, f]] = X(f)
  SuperPoly field = x(2) * xi(1);
  CHECK(schouten(field, x(1) * x(1)) == Rational(2) * x(1) * x(2));
  // [[x d, d]] = -d
  SuperPoly dx = SuperPoly::odd(1, 0);
  CHECK(schouten(SuperPoly::coordinate(1, 0) * dx, dx) == -dx);
  CHECK(jacobiator(xi(1, 2) * xi(2, 2)).is_zero());
  CHECK(jacobiator(abstract_bivector(2)).is_zero());
  CHECK(multivector_degree(xi(1) * xi(2)) == 2);
  CHECK_THROWS_AS(multivector_degree(xi(1) + xi(1) * xi(2)), InputError);
  CHECK_THROWS_AS(schouten(xi(1, 2), xi(1, 3)), InputError);
}

TEST_CASE("Schouten identities on random multivectors") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 2;
    const int a = static_cast<int>(rng() % (dim + 1)), b = static_cast<int>(rng() % (dim + 1)),
              c = static_cast<int>(rng() % (dim + 1));
    SuperPoly A = graphflow::testing::random_multivector(rng, dim, a);
    SuperPoly B = graphflow::testing::random_multivector(rng, dim, b);
    SuperPoly C = graphflow::testing::random_multivector(rng, dim, c);
    CHECK(schouten(A, B) == Rational(-sign((a - 1) * (b - 1))) * schouten(B, A));
    CHECK(schouten(A, B * C) == schouten(A, B) * C + Rational(sign((a - 1) * b)) * (B * schouten(A, C)));
    CHECK(schouten(A, schouten(B, C)) ==
          schouten(schouten(A, B), C) + Rational(sign((a - 1) * (b - 1))) * schouten(B, schouten(A, C)));
  }
}

TEST_CASE("Poisson differential squares to zero at Poisson structures") {
  SuperPoly h = SuperPoly::function(3, "h");
  for (const PoissonModel& m : {linear_bracket(so3_constants()), nambu_bivector(abstract_nambu())}) {
    CHECK(m.jacobi_residual().is_zero());
    CHECK(poisson_differential(m.p, poisson_differential(m.p, h)).is_zero());
    SuperPoly v = SuperPoly::function(3, "v1") * xi(1) + SuperPoly::function(3, "v3") * xi(3);
    CHECK(poisson_differential(m.p, poisson_differential(m.p, v)).is_zero());
  }
  CHECK(poisson_differential(abstract_bivector(3), abstract_bivector(3)) ==
        Rational(2) * jacobiator(abstract_bivector(3)));
}

TEST_CASE("expression parser") {
  ExprPtr q = parse_expression("(x1^2 + x2^2 + x3^2)/2");
  CHECK(q->kind == Expression::Kind::Div);
  CHECK(to_string(*q) == "(x1^2 + x2^2 + x3^2)/2");
  ExprPtr l = parse_expression("rho*x1 - 3/2*x3");
  CHECK(l->kind == Expression::Kind::Sub);
  CHECK(to_string(*l) == "rho*x1 - 3/2*x3");
  CHECK(*parse_expression(to_string(*l)) == *l);
  CHECK(to_string(*parse_expression("-(x1 - x2) ^ 3")) == "-(x1 - x2)^3");
  CHECK(parse_expression("2 \xE2\x88\x92 x1")->kind == Expression::Kind::Sub);

  CHECK_THROWS_AS(parse_expression("x1^(1/2)"), ParseError);
  try {
    parse_expression("x1 + * x2");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_expression("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_expression("(x1"), ParseError);
  CHECK_THROWS_AS(parse_expression("1.5"), ParseError);

  SymbolTable t;
  t.dim = 2;
  t.parameters = {"t"};
  CHECK_THROWS_AS(parse_superpoly("x3", t), InputError);
  CHECK_THROWS_AS(parse_superpoly("unknown*x1", t), InputError);
  CHECK_THROWS_AS(parse_superpoly("1/x1", t), InputError);
  CHECK_THROWS_AS(parse_superpoly("x1/0", t), InputError);
  CHECK(parse_superpoly("t*x1/2 - x1*t/2", t).is_zero());
  CHECK(parse_superpoly("2^-2", t) == SuperPoly::constant(2, Rational(1, 4)));
}

TEST_CASE("symbol registry rejects reserved names and kind conflicts") {
  CHECK_THROWS_AS(register_symbol("x1", SymbolKind::Function), InputError);
  CHECK_THROWS_AS(register_symbol("xi2", SymbolKind::Parameter), InputError);
  register_symbol("kappa_test", SymbolKind::Parameter);
  CHECK_THROWS_AS(register_symbol("kappa_test", SymbolKind::Function), InputError);
}
