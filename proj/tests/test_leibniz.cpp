#include "doctest.h"

#include "graphflow/errors.hpp"
#include "graphflow/leibniz.hpp"
#include "graphflow/model_io.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

using namespace graphflow;

TEST_CASE("Leibniz records") {
  OrGraph bare = parse_leibniz("1 3 J s0 s1 s2");
  CHECK(bare.vertex_count() == 1);
  CHECK(bare.arrow_count() == 0);
  CHECK(leibniz_sinks(bare) == 3);

  OrGraph one = parse_leibniz("2 3 J 1 s0 s1 P s2 0");
  CHECK(one.arrow_count() == 2);
  CHECK(format_leibniz(one) == "2 3 J 1 s0 s1 P 0 s2");
  CHECK(parse_leibniz(format_leibniz(one)) == one);

  CHECK_THROWS_AS(parse_leibniz("1 3 P s0 s1 s2"), InputError);
  CHECK_THROWS_AS(parse_leibniz("1 2 J s0 s1 s1"), InputError);
  CHECK_THROWS_AS(parse_leibniz("2 2 J 1 1 s0 P s1 0"), InputError);
  CHECK_THROWS_AS(parse_leibniz("2 3 J 1 s0 s1 P s2 7"), InputError);
}

TEST_CASE("Leibniz sums round-trip") {
  LeibnizSum s;
  for (const OrGraph& g : enumerate_leibniz_graphs(2, 3)) add_leibniz(s, g, Rational(g.arrow_count(), 7));
  REQUIRE_FALSE(s.empty());
  std::string text = format_leibniz_sum(s);
  CHECK(parse_leibniz_sum(text) == s);
  CHECK(format_leibniz_sum(parse_leibniz_sum(text)) == text);
}

TEST_CASE("bare Jacobiator expands to the Jacobiator") {
  SuperPoly p = abstract_bivector(3);
  OrGraph bare = parse_leibniz("1 3 J s0 s1 s2");
  CHECK(expand_leibniz(bare, p) == jacobiator(p));
  CHECK(expand_leibniz_cyclic(bare, p) == jacobiator(p));
}

TEST_CASE("Jacobiator-content and Kontsevich-expansion routes agree") {
  SuperPoly p = abstract_bivector(3);
  for (int arrows = 1; arrows <= 3; ++arrows)
    for (const OrGraph& g : enumerate_leibniz_graphs(1, arrows)) CHECK(expand_leibniz(g, p) == expand_leibniz_cyclic(g, p));
  for (const OrGraph& g : enumerate_leibniz_graphs(2, 4)) CHECK(expand_leibniz(g, p) == expand_leibniz_cyclic(g, p));
}

TEST_CASE("Leibniz graphs vanish at Poisson structures") {
  PoissonModel so3 = *builtin_model("so3");
  for (const OrGraph& g : enumerate_leibniz_graphs(1, 2)) CHECK(expand_leibniz(g, so3.p).is_zero());
}

TEST_CASE("enumeration is canonical, nonzero and sorted") {
  auto gs = enumerate_leibniz_graphs(2, 3);
  REQUIRE_FALSE(gs.empty());
  CHECK(std::is_sorted(gs.begin(), gs.end()));
  for (const OrGraph& g : gs) {
    OrCanonical c = canonical_form(g, 1);
    CHECK(c.sign == 1);
    CHECK(c.graph == g);
  }
}

TEST_CASE("insertion diamond reproduces the Jacobiator insertions") {
  SuperPoly p = abstract_bivector(3);
  LeibnizSum d = insertion_diamond(gamma3().sum);
  CHECK(expand_leibniz(d, p) == jacobiator_insertion_sum(gamma3().sum, p));
}

TEST_CASE("ansatz on trivial targets") {
  SuperPoly p = abstract_bivector(3);
  Factorization f = leibniz_ansatz_iterate(SuperPoly(3), p);
  CHECK(f.diamond.empty());
  CHECK(f.residual.is_zero());

  // a single Leibniz graph is recovered from its own expansion
  OrGraph g = enumerate_leibniz_graphs(1, 2).front();
  Factorization h = leibniz_ansatz_iterate(expand_leibniz(g, p) * Rational(3), p);
  CHECK(h.residual.is_zero());
  CHECK(expand_leibniz(h.diamond, p) == expand_leibniz(g, p) * Rational(3));
}

TEST_CASE("metagraph") {
  OrGraph g = enumerate_leibniz_graphs(1, 2).front();
  LeibnizSum one;
  add_leibniz(one, g, 1);
  MetagraphReport r = leibniz_metagraph({one});
  CHECK(r.nodes.size() == 1);
  CHECK(r.edges.empty());
  CHECK(r.cycle_rank == 0);

  // Jacobiator with no arrows and a graph far from it share no orgraph
  LeibnizSum two;
  add_leibniz(two, parse_leibniz("1 3 J s0 s1 s2"), 1);
  add_leibniz(two, enumerate_leibniz_graphs(2, 4).back(), 1);
  MetagraphReport t = leibniz_metagraph({two});
  CHECK(t.nodes.size() == 2);
  CHECK(t.components.size() == 2);
}
