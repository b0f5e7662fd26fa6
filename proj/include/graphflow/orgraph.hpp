#pragma once

#include "graphflow/graph.hpp"
#include "graphflow/superpoly.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace graphflow {

/// Arrow from -> to: the odd slot of `from` is contracted with a derivative
/// acting on `to`.
struct Arrow {
  std::uint8_t from = 0;
  std::uint8_t to = 0;
  auto operator<=>(const Arrow&) const = default;
};

/// Directed graph with ordered arrows; no loops, no repeated arrow in the same
/// direction (opposite arrows are allowed).
class OrGraph {
 public:
  OrGraph() = default;
  OrGraph(int n, std::vector<Arrow> arrows);
  OrGraph(int n, std::initializer_list<std::pair<int, int>> arrows);

  int vertex_count() const { return n_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::vector<int> out_degrees() const;
  std::vector<int> in_degrees() const;

  auto operator<=>(const OrGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Arrow> arrows_;
};

using OrGraphSum = std::map<OrGraph, Rational>;

struct OrCanonical {
  OrGraph graph;
  int sign = 0;
};

/// Least sorted arrow list over relabelings that fix vertices [0, fixed);
/// sign is the arrow permutation parity, 0 if an automorphism is odd.
/// Exhaustive over permutations (at most 9 movable vertices).
OrCanonical canonical_form(const OrGraph& g, int fixed = 0);

/// Adds c * g to the sum after canonicalization.
void add_canonical(OrGraphSum& sum, const OrGraph& g, const Rational& c, int fixed = 0);

/// Sum over all 2^E orientations of the edges (wedge order kept), dropping
/// orientations where some vertex has out-degree above `max_out`.
OrGraphSum orientations(const UnorientedGraph& g, int max_out = 2, bool canonicalize = true);

/// Content list: one multivector per vertex (on copy 0), same dimension.
using VertexContent = std::vector<SuperPoly>;

/// Edge-operator route: contents placed on private copies, arrow operators
/// sum_i d/dx_to^i d/dxi_from,i applied in arrow order, then diagonal.
SuperPoly evaluate_arrows(const OrGraph& g, const VertexContent& contents);

/// Independent route: per-vertex local derivatives for each index choice with
/// the global sign computed from operator reordering. Needs homogeneous contents.
SuperPoly evaluate_local(const OrGraph& g, const VertexContent& contents);

/// `n E u>v ...` arrows in order (written `u v`).
std::string format_orgraph(const OrGraph& g);
OrGraph parse_orgraph(std::string_view record);

}  // namespace graphflow
