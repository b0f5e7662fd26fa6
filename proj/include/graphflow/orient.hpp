#pragma once

#include "graphflow/graph.hpp"
#include "graphflow/orgraph.hpp"
#include "graphflow/superpoly.hpp"

#include <utility>
#include <vector>

namespace graphflow {

/// Odd operator on copies: sum_i d/dx_to^i d/dxi_from,i, plus the reverse
/// term when `both` is set (the undirected edge operator).
struct EdgeOperator {
  int from = 0;
  int to = 0;
  bool both = true;
};

/// Multiplies contents placed on copies 0..n-1 in vertex order.
SuperPoly place_contents(const VertexContent& contents);

/// Applies the operators in order to a polynomial over copies. Term-parallel.
SuperPoly apply_operators(SuperPoly product, const std::vector<EdgeOperator>& ops);

/// Or(g)(contents): edge operators for every edge in wedge order, then the
/// diagonal restriction. Output odd degree is sum(deg contents) - E.
SuperPoly evaluate(const UnorientedGraph& g, const VertexContent& contents);

/// Linear extension of evaluate with every content equal to P.
SuperPoly orient_flow(const GraphSum& gamma, const SuperPoly& p);

/// Evaluation with [[P,P]] at vertex i and P elsewhere, summed over terms.
SuperPoly jacobiator_insertion(const GraphSum& gamma, const SuperPoly& p, int i);

/// Sum over all vertices i of jacobiator_insertion.
SuperPoly jacobiator_insertion_sum(const GraphSum& gamma, const SuperPoly& p);

namespace serial {

SuperPoly apply_operators(SuperPoly product, const std::vector<EdgeOperator>& ops);
SuperPoly evaluate(const UnorientedGraph& g, const VertexContent& contents);
SuperPoly orient_flow(const GraphSum& gamma, const SuperPoly& p);

}  // namespace serial

/// Oracle: evaluate through the directed-graph expansion and local factors.
SuperPoly evaluate_via_orgraphs(const UnorientedGraph& g, const VertexContent& contents);

}  // namespace graphflow
