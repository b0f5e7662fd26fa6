#include "doctest.h"
#include "support.hpp"

#include "graphflow/graph_complex.hpp"

using namespace graphflow;
using graphflow::testing::Rng;

namespace {

int edge_count(const GraphSum& s) { return s.empty() ? 0 : s.terms().begin()->first.edge_count(); }

// Random sum whose terms share one edge-count parity, so the bracket sign is defined.
GraphSum random_homogeneous(Rng& rng, int max_n, int parity) {
  GraphSum s;
  for (int k = 0; k < 4; ++k) {
    UnorientedGraph g = graphflow::testing::random_graph(rng, 2 + static_cast<int>(rng() % (max_n - 1)), 0.5);
    if (g.edge_count() % 2 == parity) s.add(g, graphflow::testing::random_rational(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("insertion examples") {
  GraphSum s = insert(stick(), single_vertex(), 0);
  CHECK(s == GraphSum(stick()));
  // blowing up a vertex of the stick gives the 3-path, a zero graph
  CHECK(insert_everywhere(stick(), stick()).empty());
}

TEST_CASE("bracket is graded antisymmetric and bilinear") {
  Rng rng(3);
  CHECK(lie_bracket(GraphSum(stick()), GraphSum()).empty());
  for (int trial = 0; trial < 20; ++trial) {
    GraphSum a = random_homogeneous(rng, 4, trial % 2);
    GraphSum b = random_homogeneous(rng, 4, (trial / 2) % 2);
    const int sign = (edge_count(a) * edge_count(b)) % 2 == 0 ? 1 : -1;
    CHECK(lie_bracket(a, b) == Rational(-sign) * lie_bracket(b, a));
    CHECK(lie_bracket(a + b, b) == lie_bracket(a, b) + lie_bracket(b, b));
  }
}

TEST_CASE("d squares to zero on random sums") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    GraphSum s = graphflow::testing::random_graph_sum(rng, 6, 3);
    CHECK(differential(differential(s)).empty());
  }
}

TEST_CASE("Jacobi identity of the bracket on odd-edge-count sums") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    GraphSum a = random_homogeneous(rng, 3, 1), b = random_homogeneous(rng, 3, 1), c = random_homogeneous(rng, 3, 1);
    // all odd: [a,[b,c]] = [[a,b],c] - [b,[a,c]]
    GraphSum lhs = lie_bracket(a, lie_bracket(b, c));
    GraphSum rhs = lie_bracket(lie_bracket(a, b), c) - lie_bracket(b, lie_bracket(a, c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("parallel and serial kernels agree") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    GraphSum s = graphflow::testing::random_graph_sum(rng, 6, 4);
    GraphSum t = graphflow::testing::random_graph_sum(rng, 4, 2);
    CHECK(differential(s) == serial::differential(s));
    CHECK(lie_bracket(s, t) == serial::lie_bracket(s, t));
  }
}

TEST_CASE("enumeration matches the bitmask oracle") {
  CHECK(enumerate_graphs(3, 3).empty());
  REQUIRE(enumerate_graphs(2, 1).size() == 1);
  CHECK(enumerate_graphs(2, 1).front() == stick());
  REQUIRE(enumerate_graphs(4, 6).size() == 1);
  for (int n = 1; n <= 6; ++n)
    for (int e = 0; e <= n * (n - 1) / 2; ++e) CHECK(enumerate_graphs(n, e) == serial::enumerate_graphs_bitmask(n, e));
}

TEST_CASE("tetrahedron and its unions are cocycles") {
  GraphSum g3 = gamma3().sum;
  CHECK(is_cocycle(g3));
  CHECK(is_cocycle(disjoint_union(g3, g3)));
  CHECK(disjoint_union(g3, GraphSum()).empty());
}

TEST_CASE("cohomology of small cells") {
  CHECK(cohomology_dimension(4, 6) == 1);
  CHECK(cohomology_dimension(5, 8) == 0);
  auto classes = nontrivial_cocycles(6, 10);
  REQUIRE(classes.size() == 1);
  CHECK(is_cocycle(classes.front()));
}

TEST_CASE("cocycle library loads and validates") {
  auto lib = load_cocycle_library(default_data_dir());
  REQUIRE(lib.size() >= 2);
  for (const auto& r : lib) CHECK(is_cocycle(r.sum));
  CocycleRecord g5 = find_cocycle("gamma5", default_data_dir());
  CHECK(g5.bigrading == std::pair{6, 10});
  CHECK(find_cocycle("gamma3", default_data_dir()).sum == GraphSum(complete_graph(4)));
}
