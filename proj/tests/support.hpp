#pragma once

// Random generators shared by the property tests.

#include "graphflow/graph.hpp"
#include "graphflow/superpoly.hpp"

#include <random>
#include <vector>

namespace graphflow::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  Rational q(n, den(rng));
  q.canonicalize();
  return q;
}

/// Simple graph on n vertices; each pair present with probability p.
inline UnorientedGraph random_graph(Rng& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  std::shuffle(edges.begin(), edges.end(), rng);
  return UnorientedGraph(n, edges);
}

/// Up to `terms` random graphs with n <= max_n, homogeneous edge parity not
/// required.
inline GraphSum random_graph_sum(Rng& rng, int max_n, int terms) {
  std::uniform_int_distribution<int> nv(1, max_n);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  GraphSum s;
  for (int k = 0; k < terms; ++k) s.add(random_graph(rng, nv(rng), density(rng)), random_rational(rng));
  return s;
}

/// Random polynomial in x of degree <= max_deg with up to `terms` terms.
inline SuperPoly random_scalar(Rng& rng, int dim, int max_deg, int terms) {
  std::uniform_int_distribution<int> coord(0, dim - 1), deg(0, max_deg);
  SuperPoly out(dim);
  for (int t = 0; t < terms; ++t) {
    SuperPoly m = SuperPoly::constant(dim, random_rational(rng));
    for (int d = deg(rng); d > 0; --d) m = m * SuperPoly::coordinate(dim, coord(rng));
    out += m;
  }
  return out;
}

/// Homogeneous multivector of odd degree k with random polynomial coefficients.
inline SuperPoly random_multivector(Rng& rng, int dim, int k, int max_deg = 2, int terms = 2) {
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;
  SuperPoly out(dim);
  for (int t = 0; t < terms; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    SuperPoly xi = SuperPoly::constant(dim, 1);
    for (int j = 0; j < k; ++j) xi = xi * SuperPoly::odd(dim, idx[j]);
    out += random_scalar(rng, dim, max_deg, 2) * xi;
  }
  return out;
}

}  // namespace graphflow::testing
