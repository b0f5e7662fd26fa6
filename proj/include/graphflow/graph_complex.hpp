#pragma once

#include "graphflow/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphflow {

/// Inserts `inner` into vertex `at_vertex` of `outer`, summing over every way
/// of reattaching the edges incident to that vertex onto vertices of `inner`.
/// Vertices of `outer` other than `at_vertex` keep their relative order and
/// come first; wedge order is outer's edges (reattached) followed by inner's.
GraphSum insert(const UnorientedGraph& inner, const UnorientedGraph& outer, int at_vertex);

/// Sum of insert(inner, outer, v) over all vertices v of outer.
GraphSum insert_everywhere(const UnorientedGraph& inner, const UnorientedGraph& outer);

/// [a, b] = a o b - (-1)^(E_a E_b) b o a, where a o b inserts a into b.
GraphSum lie_bracket(const GraphSum& a, const GraphSum& b);

/// d = [stick, .]. Parallel over source terms.
GraphSum differential(const GraphSum& s);

bool is_cocycle(const GraphSum& s);

/// Shifted-label concatenation, bilinear; first factor's edges come first.
GraphSum disjoint_union(const GraphSum& a, const GraphSum& b);
UnorientedGraph disjoint_union(const UnorientedGraph& a, const UnorientedGraph& b);

inline constexpr int kMaxEnumerationVertices = 8;

/// Nonzero simple graphs with n vertices and E edges up to isomorphism, in
/// canonical form and ascending order. Orderly augmentation by one edge.
std::vector<UnorientedGraph> enumerate_graphs(int n, int edges);

/// Every isomorphism class (zero graphs included) with n vertices, E edges.
std::vector<UnorientedGraph> enumerate_all_classes(int n, int edges);

namespace serial {

GraphSum lie_bracket(const GraphSum& a, const GraphSum& b);
GraphSum differential(const GraphSum& s);

/// Filters all C(n(n-1)/2, E) edge subsets through the exhaustive labeler.
/// Independent of the augmentation route; n <= 6.
std::vector<UnorientedGraph> enumerate_graphs_bitmask(int n, int edges);

}  // namespace serial

/// Matrix of d restricted to enumerate_graphs(n, E), with target rows the
/// canonical graphs that occur in the images.
struct DifferentialMatrix {
  std::vector<UnorientedGraph> domain;
  std::vector<UnorientedGraph> codomain;
  std::vector<GraphSum> images;  // images[j] = d(domain[j])
};

DifferentialMatrix differential_matrix(int n, int edges);

/// Basis of ker d on the (n, E) cell, each vector in reduced echelon form.
std::vector<GraphSum> cocycle_basis(int n, int edges);

/// dim ker d(n,E) - rank d(n-1,E-1).
int cohomology_dimension(int n, int edges);

/// Cocycles in ker d that are not coboundaries: a complement of im d(n-1,E-1)
/// inside ker d(n,E).
std::vector<GraphSum> nontrivial_cocycles(int n, int edges);

// ---------------------------------------------------------------------------
// Cocycle library

struct CocycleRecord {
  std::string name;
  GraphSum sum;
  std::pair<int, int> bigrading{0, 0};
  std::string provenance;
  /// Flows that are not graph cocycles (e.g. the one-vertex scaling flow).
  bool pseudo = false;
};

/// Kontsevich tetrahedron: K4 with coefficient 1.
CocycleRecord gamma3();
/// The single-vertex graph; orients to Q(P) = P. Not a cocycle.
CocycleRecord scaling_flow();

/// Validates bigrading and d(sum) = 0 (skipped for pseudo records).
void validate(const CocycleRecord& r);

/// Manifest lines: name<TAB>file<TAB>n<TAB>E<TAB>provenance, relative to dir.
std::vector<CocycleRecord> load_cocycle_library(const std::string& dir);

/// Data directory: GRAPHFLOW_DATA, else the source tree's data/.
std::string default_data_dir();

/// Built-ins (gamma3, scaling) first, then the manifest in data_dir.
CocycleRecord find_cocycle(const std::string& name, const std::string& data_dir);

}  // namespace graphflow
