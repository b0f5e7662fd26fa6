#include "graphflow/graph_complex.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/linalg.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace graphflow {

GraphSum insert(const UnorientedGraph& inner, const UnorientedGraph& outer, int at_vertex) {
  const int n_out = outer.vertex_count();
  const int n_in = inner.vertex_count();
  if (at_vertex < 0 || at_vertex >= n_out)
    throw InputError("insertion vertex " + std::to_string(at_vertex) + " out of range");
  const int n = n_out - 1 + n_in;
  if (n > kMaxGraphVertices) throw ResourceError("insertion result exceeds vertex limit");

  auto outer_label = [&](int w) { return w < at_vertex ? w : w - 1; };
  const int inner_offset = n_out - 1;

  std::vector<int> incident;
  for (int i = 0; i < outer.edge_count(); ++i) {
    const Edge& e = outer.edges()[i];
    if (e.lo == at_vertex || e.hi == at_vertex) incident.push_back(i);
  }

  GraphSum out;
  if (n_in == 0) return out;
  std::vector<int> choice(incident.size(), 0);
  while (true) {
    std::vector<Edge> edges;
    edges.reserve(outer.edge_count() + inner.edge_count());
    std::size_t k = 0;
    for (int i = 0; i < outer.edge_count(); ++i) {
      const Edge& e = outer.edges()[i];
      if (k < incident.size() && incident[k] == i) {
        int other = e.lo == at_vertex ? e.hi : e.lo;
        edges.emplace_back(outer_label(other), inner_offset + choice[k]);
        ++k;
      } else {
        edges.emplace_back(outer_label(e.lo), outer_label(e.hi));
      }
    }
    for (const Edge& e : inner.edges()) edges.emplace_back(inner_offset + e.lo, inner_offset + e.hi);
    out.add_raw(n, std::move(edges), 1);

    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == n_in) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return out;
}

GraphSum insert_everywhere(const UnorientedGraph& inner, const UnorientedGraph& outer) {
  GraphSum out;
  for (int v = 0; v < outer.vertex_count(); ++v) out += insert(inner, outer, v);
  return out;
}

namespace {

GraphSum bracket_term(const UnorientedGraph& a, const UnorientedGraph& b) {
  GraphSum t = insert_everywhere(a, b);
  GraphSum u = insert_everywhere(b, a);
  if ((a.edge_count() * b.edge_count()) % 2 == 0)
    t -= u;
  else
    t += u;
  return t;
}

using TermPair = std::pair<GraphSum::Terms::const_iterator, GraphSum::Terms::const_iterator>;

std::vector<TermPair> term_pairs(const GraphSum& a, const GraphSum& b) {
  std::vector<TermPair> pairs;
  for (auto i = a.terms().begin(); i != a.terms().end(); ++i)
    for (auto j = b.terms().begin(); j != b.terms().end(); ++j) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

GraphSum lie_bracket(const GraphSum& a, const GraphSum& b) {
  auto pairs = term_pairs(a, b);
  std::vector<GraphSum> partial(pairs.size());
  const long count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    const auto& [i, j] = pairs[k];
    partial[k] = bracket_term(i->first, j->first);
    partial[k] *= i->second * j->second;
  }
  GraphSum out;
  for (const GraphSum& p : partial) out += p;
  return out;
}

GraphSum differential(const GraphSum& s) { return lie_bracket(GraphSum(stick()), s); }

bool is_cocycle(const GraphSum& s) { return differential(s).empty(); }

namespace serial {

GraphSum lie_bracket(const GraphSum& a, const GraphSum& b) {
  GraphSum out;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) {
      GraphSum t = bracket_term(ga, gb);
      t *= ca * cb;
      out += t;
    }
  return out;
}

GraphSum differential(const GraphSum& s) { return serial::lie_bracket(GraphSum(stick()), s); }

std::vector<UnorientedGraph> enumerate_graphs_bitmask(int n, int edges) {
  if (n > 6) throw ResourceError("bitmask enumeration limited to 6 vertices");
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::set<UnorientedGraph> found;
  ExhaustiveLabeling labeler;
  const std::uint32_t limit = 1u << pairs.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (std::popcount(mask) != edges) continue;
    std::vector<Edge> chosen;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) chosen.push_back(pairs[i]);
    CanonicalForm cf = labeler.canonical_form(UnorientedGraph(n, std::move(chosen)));
    if (cf.sign != 0) found.insert(cf.graph);
  }
  return {found.begin(), found.end()};
}

}  // namespace serial

UnorientedGraph disjoint_union(const UnorientedGraph& a, const UnorientedGraph& b) {
  const int offset = a.vertex_count();
  if (offset + b.vertex_count() > kMaxGraphVertices) throw ResourceError("disjoint union exceeds vertex limit");
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.emplace_back(offset + e.lo, offset + e.hi);
  return UnorientedGraph(offset + b.vertex_count(), std::move(edges));
}

GraphSum disjoint_union(const GraphSum& a, const GraphSum& b) {
  GraphSum out;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) out.add(disjoint_union(ga, gb), ca * cb);
  return out;
}

std::vector<UnorientedGraph> enumerate_all_classes(int n, int edges) {
  if (n < 0 || n > kMaxEnumerationVertices)
    throw ResourceError("graph enumeration limited to " + std::to_string(kMaxEnumerationVertices) + " vertices");
  if (edges < 0 || edges > n * (n - 1) / 2) return {};
  std::vector<UnorientedGraph> level{UnorientedGraph(n, std::vector<Edge>{})};
  for (int e = 0; e < edges; ++e) {
    std::vector<UnorientedGraph> candidates;
    for (const auto& g : level) {
      auto adj = g.adjacency();
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (adj[a] >> b & 1u) continue;
          std::vector<Edge> next = g.edges();
          next.emplace_back(a, b);
          candidates.emplace_back(n, std::move(next));
        }
    }
    std::vector<UnorientedGraph> canon(candidates.size());
    const long count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) canon[i] = canonical_form(candidates[i]).graph;
    std::set<UnorientedGraph> unique(canon.begin(), canon.end());
    level.assign(unique.begin(), unique.end());
  }
  return level;
}

std::vector<UnorientedGraph> enumerate_graphs(int n, int edges) {
  std::vector<UnorientedGraph> out;
  for (auto& g : enumerate_all_classes(n, edges))
    if (canonical_form(g).sign != 0) out.push_back(std::move(g));
  return out;
}

DifferentialMatrix differential_matrix(int n, int edges) {
  DifferentialMatrix m;
  m.domain = enumerate_graphs(n, edges);
  m.images.resize(m.domain.size());
  const long count = static_cast<long>(m.domain.size());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < count; ++j) m.images[j] = serial::differential(GraphSum(m.domain[j]));
  std::set<UnorientedGraph> rows;
  for (const auto& img : m.images)
    for (const auto& [g, c] : img.terms()) rows.insert(g);
  m.codomain.assign(rows.begin(), rows.end());
  return m;
}

namespace {

SparseVector to_sparse(const GraphSum& s, const std::vector<UnorientedGraph>& index) {
  SparseVector v;
  for (const auto& [g, c] : s.terms()) {
    auto it = std::lower_bound(index.begin(), index.end(), g);
    if (it == index.end() || *it != g) throw InputError("graph missing from basis");
    v.emplace(static_cast<int>(it - index.begin()), c);
  }
  return v;
}

GraphSum from_sparse(const SparseVector& v, const std::vector<UnorientedGraph>& index) {
  GraphSum s;
  for (const auto& [k, c] : v) s.add_canonical(index[k], c);
  return s;
}

std::vector<SparseVector> kernel_vectors(const DifferentialMatrix& m) {
  ColumnEliminator elim;
  for (const auto& img : m.images) elim.add_column(to_sparse(img, m.codomain));
  return reduced_echelon(elim.kernel(), false);
}

}  // namespace

std::vector<GraphSum> cocycle_basis(int n, int edges) {
  DifferentialMatrix m = differential_matrix(n, edges);
  std::vector<GraphSum> out;
  for (const auto& v : kernel_vectors(m)) out.push_back(from_sparse(v, m.domain));
  return out;
}

int cohomology_dimension(int n, int edges) {
  int kernel = static_cast<int>(cocycle_basis(n, edges).size());
  if (n < 2 || edges < 1) return kernel;
  DifferentialMatrix prev = differential_matrix(n - 1, edges - 1);
  ColumnEliminator elim;
  for (const auto& img : prev.images) elim.add_column(to_sparse(img, prev.codomain));
  return kernel - elim.rank();
}

std::vector<GraphSum> nontrivial_cocycles(int n, int edges) {
  DifferentialMatrix m = differential_matrix(n, edges);
  auto kernel = kernel_vectors(m);
  ColumnEliminator span;
  std::vector<SparseVector> images;
  if (n >= 2 && edges >= 1) {
    for (const auto& g : enumerate_graphs(n - 1, edges - 1)) {
      auto img = serial::differential(GraphSum(g));
      if (!img.empty()) images.push_back(to_sparse(img, m.domain));
    }
  }
  auto image_echelon = reduced_echelon(images, false);
  for (const auto& v : image_echelon) span.add_column(v);
  std::vector<GraphSum> out;
  for (const auto& k : kernel) {
    if (span.add_column(k)) out.push_back(from_sparse(reduce_modulo(k, image_echelon, false), m.domain));
  }
  return out;
}

}  // namespace graphflow
