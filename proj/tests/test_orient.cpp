#include "doctest.h"
#include "support.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/model_io.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

using namespace graphflow;
using graphflow::testing::Rng;

namespace {

// Or(K4)(P) for P = P12(x1,x2) xi1 xi2; computed once with the edge-operator
// route, cross-checked against the directed-graph route, then frozen.
constexpr const char* kTetrahedralFlow2d =
    "-24*d[P12]/dx1*d[P12]/dx1dx1dx2*d[P12]/dx2^2*xi1*xi2 + 24*d[P12]/dx1^2*d[P12]/dx1dx2dx2*d[P12]/dx2*xi1*xi2 "
    "- 8*d[P12]/dx1^3*d[P12]/dx2dx2dx2*xi1*xi2 + 8*d[P12]/dx1dx1dx1*d[P12]/dx2^3*xi1*xi2";

// Ratio c with a == c * b, or nullopt if none exists.
std::optional<Rational> proportionality(const SuperPoly& a, const SuperPoly& b) {
  if (b.is_zero() || a.size() != b.size()) return std::nullopt;
  Rational c = a.terms().front().coeff / b.terms().front().coeff;
  if (a == c * b) return c;
  return std::nullopt;
}

}  // namespace

TEST_CASE("single vertex evaluates to its content") {
  SuperPoly p = abstract_bivector(3);
  CHECK(evaluate(single_vertex(), {p}) == p);
  CHECK(orient_flow(scaling_flow().sum, p) == p);
}

TEST_CASE("degree bookkeeping") {
  SuperPoly p = abstract_bivector(3);
  SuperPoly q = orient_flow(gamma3().sum, p);
  CHECK(q.odd_degree() == 2);
  CHECK(q.size() == 816);
  // (2,2) graph: 2n - E = 2 odd generators remain
  CHECK(evaluate(stick(), {p, p}).odd_degree() == 3);
}

TEST_CASE("stick evaluates to a fixed multiple of [[P,P]]") {
  for (int dim : {2, 3}) {
    SuperPoly p = abstract_bivector(dim);
    CHECK(evaluate(stick(), {p, p}) == -schouten(p, p));
  }
  Rng rng(7);
  SuperPoly a = graphflow::testing::random_multivector(rng, 3, 2), b = graphflow::testing::random_multivector(rng, 3, 1);
  // the stick on (A, B) is the Schouten bracket up to the same sign
  CHECK(evaluate(stick(), {a, b}) == -schouten(a, b));
}

TEST_CASE("disjoint unions evaluate to a fixed multiple of the product") {
  // stick on (bivector, vector field) is an even bivector; r = 4 leaves room for a nonzero product
  Rng rng(19);
  const UnorientedGraph two_sticks(4, {{0, 1}, {2, 3}});
  std::optional<Rational> common;
  for (int trial = 0; trial < 6; ++trial) {
    VertexContent c;
    for (int k = 0; k < 2; ++k) {
      c.push_back(graphflow::testing::random_multivector(rng, 4, 2, 2, 3));
      c.push_back(graphflow::testing::random_multivector(rng, 4, 1, 2, 3));
    }
    SuperPoly product = evaluate(stick(), {c[0], c[1]}) * evaluate(stick(), {c[2], c[3]});
    if (product.is_zero()) continue;
    auto ratio = proportionality(evaluate(two_sticks, c), product);
    REQUIRE(ratio.has_value());
    if (!common) common = ratio;
    CHECK(*ratio == *common);
  }
  REQUIRE(common.has_value());
  CHECK(*common == 1);
}

TEST_CASE("golden tetrahedral flow in dimension 2") {
  SuperPoly q = orient_flow(gamma3().sum, abstract_bivector(2));
  CHECK(to_string(q) == kTetrahedralFlow2d);
}

TEST_CASE("edge-operator route, directed-graph route and serial kernel agree") {
  Rng rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 2 + trial % 2;
    const int n = 2 + trial % 3;
    UnorientedGraph g = graphflow::testing::random_graph(rng, n, 0.6);
    VertexContent contents;
    for (int v = 0; v < n; ++v) contents.push_back(graphflow::testing::random_multivector(rng, dim, 1 + v % 2, 3, 2));
    SuperPoly a = evaluate(g, contents);
    CHECK(a == serial::evaluate(g, contents));
    CHECK(a == evaluate_via_orgraphs(g, contents));
  }
  SuperPoly p = abstract_bivector(3);
  VertexContent four(4, p);
  CHECK(evaluate(complete_graph(4), four) == evaluate_via_orgraphs(complete_graph(4), four));
  CHECK(orient_flow(gamma3().sum, p) == serial::orient_flow(gamma3().sum, p));
}

TEST_CASE("flows vanish at linear brackets") {
  PoissonModel so3 = *builtin_model("so3");
  CHECK(orient_flow(gamma3().sum, so3.p).is_zero());
  for (int i = 0; i < 4; ++i) CHECK(jacobiator_insertion(gamma3().sum, so3.p, i).is_zero());
}

TEST_CASE("substitution commutes with orientation") {
  PoissonModel cubic = *builtin_model("nambu-cubic");
  SuperPoly abstract = orient_flow(gamma3().sum, abstract_bivector(3));
  std::map<std::string, SuperPoly> bind{{"P12", cubic.p.coefficient(0b011)},
                                        {"P13", cubic.p.coefficient(0b101)},
                                        {"P23", cubic.p.coefficient(0b110)}};
  SuperPoly q = apply_symmetry(cubic, gamma3());
  CHECK_FALSE(q.is_zero());
  CHECK(substitute(abstract, bind) == q);
}

TEST_CASE("symmetry property in dimension 2") {
  SuperPoly p = abstract_bivector(2);
  CHECK(schouten(p, orient_flow(gamma3().sum, p)).is_zero());
}

TEST_CASE("Jacobiator insertions reproduce [[P, Or(gamma3)(P)]] in dimension 3") {
  SuperPoly p = abstract_bivector(3);
  SuperPoly lhs = schouten(p, orient_flow(gamma3().sum, p));
  SuperPoly rhs = jacobiator_insertion_sum(gamma3().sum, p);
  auto c = proportionality(lhs, rhs);
  REQUIRE(c.has_value());
  CHECK(*c == Rational(1, 2));
}

TEST_CASE("orientation rejects mismatched input") {
  CHECK_THROWS_AS(evaluate(stick(), {abstract_bivector(3)}), InputError);
}
