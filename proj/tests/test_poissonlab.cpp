#include "doctest.h"
#include "support.hpp"

#include "graphflow/cancel.hpp"
#include "graphflow/errors.hpp"
#include "graphflow/expression.hpp"
#include "graphflow/model_io.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

#include <filesystem>

using namespace graphflow;

namespace {

SuperPoly xi(int i) { return SuperPoly::odd(3, i - 1); }
SuperPoly x(int i) { return SuperPoly::coordinate(3, i - 1); }

SymbolTable table3() {
  SymbolTable t;
  t.dim = 3;
  t.parameters = {"t"};
  return t;
}

// P(eps) = sum eps^m P_m with eps a parameter; [eps^m] of a polynomial.
SuperPoly eps_coefficient(const SuperPoly& p, int m) {
  const Atom eps = Atom::parameter(*find_symbol("eps"));
  std::vector<SuperPoly::Term> out;
  for (const auto& t : p.terms()) {
    int e = 0;
    Monomial rest;
    for (const Factor& f : t.mono.factors()) {
      if (f.atom == eps)
        e = static_cast<int>(f.exponent);
      else
        rest = rest.times(f.atom, f.exponent);
    }
    if (e == m) out.push_back({t.odd, rest, t.coeff});
  }
  return SuperPoly::from_terms(p.dim(), std::move(out));
}

SuperPoly eps_series(const std::vector<SuperPoly>& coeffs) {
  const int dim = coeffs.front().dim();
  SuperPoly eps = SuperPoly::parameter(dim, "eps");
  SuperPoly power = SuperPoly::constant(dim, 1), out(dim);
  for (const SuperPoly& c : coeffs) {
    out += power * c;
    power = power * eps;
  }
  return out;
}

}  // namespace

TEST_CASE("Nambu bivector") {
  SymbolTable t = table3();
  PoissonModel m = nambu_bivector({parse_superpoly("(x1^2 + x2^2 + x3^2)/2", t), SuperPoly::constant(3, 1)});
  CHECK(m.p.coefficient(0b011) == x(3));
  CHECK(m.p.coefficient(0b110) == x(1));
  // P^{31} = x2, stored as P^{13} = -x2
  CHECK(m.p.coefficient(0b101) == -x(2));
  CHECK(m.p == builtin_model("so3")->p);
  CHECK(nambu_bivector({SuperPoly::constant(3, 5), SuperPoly::function(3, "rho")}).p.is_zero());
  CHECK(nambu_bivector(abstract_nambu()).jacobi_residual().is_zero());
}

TEST_CASE("linear brackets") {
  CHECK(linear_bracket(so3_constants()).jacobi_residual().is_zero());
  CHECK_FALSE(builtin_model("broken")->jacobi_residual().is_zero());
  StructureConstants zero(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  CHECK(linear_bracket(zero).p.is_zero());
  StructureConstants bad = zero;
  bad[0][1][2] = 1;
  CHECK_THROWS_AS(linear_bracket(bad), InputError);
  CHECK(linear_bracket(parse_structure_constants("1 2 3 1; 2 3 1 1; 3 1 2 1", 3)).p == linear_bracket(so3_constants()).p);
}

TEST_CASE("built-in Poisson models satisfy the Jacobi identity") {
  for (const auto& name : builtin_model_names()) {
    PoissonModel m = *builtin_model(name);
    if (name == "broken" || name == "abstract3" || name == "linear3") continue;
    CHECK_MESSAGE(m.jacobi_residual().is_zero(), name);
  }
  // generic linear brackets and abstract bivectors in dimension 3 are not Poisson
  CHECK_FALSE(builtin_model("abstract3")->jacobi_residual().is_zero());
  CHECK_FALSE(builtin_model("linear3")->jacobi_residual().is_zero());
}

TEST_CASE("symmetry flows at models") {
  CHECK(apply_symmetry(*builtin_model("so3"), gamma3()).is_zero());
  CHECK(apply_symmetry(*builtin_model("abstract2"), gamma3()) == orient_flow(gamma3().sum, abstract_bivector(2)));
  PoissonModel cubic = *builtin_model("nambu-cubic");
  SuperPoly q = apply_symmetry(cubic, gamma3());
  CHECK_FALSE(q.is_zero());
  CHECK(schouten(cubic.p, q).is_zero());
  CHECK(schouten(builtin_model("nambu")->p, apply_symmetry(*builtin_model("nambu"), gamma3())).is_zero());
  // K4 minus an edge is not closed
  CocycleRecord not_cocycle{"k4-minus-edge", GraphSum(UnorientedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}})),
                            {4, 5}, "", false};
  CHECK_THROWS_AS(apply_symmetry(cubic, not_cocycle), InputError);
}

TEST_CASE("formal integration") {
  PoissonModel so3 = *builtin_model("so3");
  auto scaling = picard_integrate(so3, scaling_flow(), 5);
  REQUIRE(scaling.size() == 6);
  Rational factorial = 1;
  for (int m = 0; m <= 5; ++m) {
    if (m > 0) factorial *= m;
    CHECK(scaling[m] == so3.p * Rational(1 / factorial));
  }
  auto tetra = picard_integrate(so3, gamma3(), 3);
  for (int m = 1; m <= 3; ++m) CHECK(tetra[m].is_zero());
  CHECK_THROWS_AS(picard_integrate(so3, gamma3(), kMaxPicardOrder + 1), ResourceError);
}

TEST_CASE("formal integration solves the flow and keeps P Poisson") {
  // polynomial coefficients keep every P_m a small polynomial
  PoissonModel m = parse_model("name: cubic2\ndim: 2\nP12: x1^3 + x1*x2^2 + x2^3\n");
  const int order = 2;
  auto coeffs = picard_integrate(m, gamma3(), order);
  REQUIRE(coeffs.size() == order + 1);
  CHECK_FALSE(coeffs[1].is_zero());
  CHECK_FALSE(coeffs[2].is_zero());
  // re-substitution: (k+1) P_{k+1} = [eps^k] Q(P(eps)); only P_0..P_k enter
  for (int k = 0; k < order; ++k) {
    SuperPoly truncated = eps_series({coeffs.begin(), coeffs.begin() + k + 1});
    CHECK(coeffs[k + 1] * Rational(k + 1) == eps_coefficient(orient_flow(gamma3().sum, truncated), k));
  }
  // jacobiator(P(eps)) = 0 mod eps^(order+1) (automatic in dimension 2, checked anyway)
  SuperPoly jac = jacobiator(eps_series(coeffs));
  for (int k = 0; k <= order; ++k) CHECK(eps_coefficient(jac, k).is_zero());
}

TEST_CASE("formal integration at a Nambu model starts with the flow") {
  PoissonModel m = *builtin_model("nambu-cubic");
  auto coeffs = picard_integrate(m, gamma3(), 1);
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0] == m.p);
  CHECK(coeffs[1] == orient_flow(gamma3().sum, m.p));
}

TEST_CASE("invariance conditions") {
  CHECK(invariance_conditions(*builtin_model("so3-scaled"), gamma3()).empty());
  CHECK(invariance_conditions(*builtin_model("linear3"), gamma3()).empty());
  CHECK(invariance_conditions(*builtin_model("nambu-quartic-family"), gamma3()).empty());

  PoissonModel family = *builtin_model("nambu-quartic-density");
  auto conds = invariance_conditions(family, gamma3());
  REQUIRE_FALSE(conds.empty());
  // spot check: a point of the zero set kills the flow, a point outside does not
  CHECK(apply_symmetry(specialize(family, {{"t", 0}}), gamma3()).is_zero());
  CHECK_FALSE(apply_symmetry(specialize(family, {{"t", Rational(1, 3)}}), gamma3()).is_zero());
  for (const SuperPoly& c : conds) CHECK(substitute(c, {{"t", SuperPoly::constant(3, 0)}}).is_zero());
}

TEST_CASE("trivialization") {
  PoissonModel so3 = *builtin_model("so3");
  Trivialization t = trivialize(so3, so3.p, 1);
  REQUIRE(t.found);
  SuperPoly euler = x(1) * xi(1) + x(2) * xi(2) + x(3) * xi(3);
  CHECK((t.x == euler || t.x == -euler));
  CHECK(so3.p - schouten(so3.p, t.x) == SuperPoly(3));
  CHECK(t.gauge.size() == 3);
  for (const SuperPoly& g : t.gauge) CHECK(schouten(so3.p, g).is_zero());

  Trivialization zero = trivialize(so3, SuperPoly(3), 1);
  CHECK(zero.found);
  CHECK(zero.x.is_zero());

  // Q = P is not a coboundary at degree 0
  CHECK_FALSE(trivialize(so3, so3.p, 0).found);
  CHECK_THROWS_AS(trivialize(so3, so3.p, kMaxTrivializeDegree + 1), ResourceError);
}

TEST_CASE("trivialization sweep at a Nambu model") {
  PoissonModel cubic = *builtin_model("nambu-cubic");
  SuperPoly q = apply_symmetry(cubic, gamma3());
  for (int d = 1; d <= 4; ++d) {
    Trivialization t = trivialize(cubic, q, d);
    if (t.found) CHECK(q - schouten(cubic.p, t.x) == SuperPoly(3));
    for (const SuperPoly& g : t.gauge) CHECK(schouten(cubic.p, g).is_zero());
  }
}

TEST_CASE("solves stop once cancellation is requested") {
  PoissonModel so3 = *builtin_model("so3");
  request_cancel();
  CHECK_THROWS_AS(trivialize(so3, so3.p, 1), Cancelled);
  CHECK_THROWS_AS(picard_integrate(so3, gamma3(), 2), Cancelled);
  CHECK_THROWS_AS(nambu_lift_conditions(builtin_model("nambu")->p), Cancelled);
  reset_cancel();
  CHECK(trivialize(so3, so3.p, 1).found);
}

TEST_CASE("Nambu lift") {
  NambuLift empty = nambu_lift_conditions(SuperPoly(3));
  CHECK(empty.solvable);
  CHECK(empty.a_dot.is_zero());
  CHECK(empty.rho_dot.is_zero());

  PoissonModel n = *builtin_model("nambu");
  NambuLift scaling = nambu_lift_conditions(n.p);
  CHECK(scaling.solvable);
  CHECK(scaling.a_dot.is_zero());
  CHECK(scaling.rho_dot == SuperPoly::function(3, "rho"));
  CHECK(scaling.kernel.size() == 1);
  CHECK_THROWS_AS(nambu_lift_conditions(n.p * SuperPoly::coordinate(3, 0)), InputError);
}

TEST_CASE("model files") {
  for (const auto& name : builtin_model_names()) {
    PoissonModel m = *builtin_model(name);
    std::string text = format_model(m);
    PoissonModel back = parse_model(text);
    CHECK_MESSAGE(back.p == m.p, name);
    CHECK(back.parameters == m.parameters);
    CHECK(format_model(back) == text);
  }
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(fs::path(default_data_dir()) / "models")) {
    PoissonModel m = read_model(entry.path().string());
    CHECK_MESSAGE(m.jacobi_residual().is_zero(), entry.path().string());
  }
  CHECK(read_model((fs::path(default_data_dir()) / "models" / "nambu-sphere.model").string()).p ==
        builtin_model("so3")->p);
  CHECK_THROWS_AS(parse_model("dim: 3\nP14: x1\n"), InputError);
  CHECK_THROWS_AS(parse_model("name: x\n"), InputError);
  CHECK_THROWS_AS(parse_model("dim: 2\nP12: y\n"), InputError);
  CHECK_THROWS_AS(parse_model("dim: 2\nP12: x1\nP12: x2\n"), InputError);
  CHECK_THROWS_AS(parse_model("dim: 2\na: x1\n"), InputError);
  CHECK_THROWS_AS(load_model("no-such-model"), InputError);
}
