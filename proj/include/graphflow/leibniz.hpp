#pragma once

#include "graphflow/graph.hpp"
#include "graphflow/orgraph.hpp"
#include "graphflow/superpoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace graphflow {

// A Leibniz graph is an OrGraph whose vertex 0 is the Jacobiator (three odd
// slots) and whose other vertices are bivectors (two slots). Slots without an
// internal arrow go to sinks; sinks are antisymmetrized by the odd calculus.

void validate_leibniz(const OrGraph& g);
int leibniz_sinks(const OrGraph& g);

/// Record: `n k` then one block per vertex, `J t t t` for vertex 0 and
/// `P t t` for the others; a target is an internal vertex index or a sink
/// `s<j>`. Arrow order is the order of internal targets in the record, so
/// arrows must be grouped by source in ascending order to be written.
std::string format_leibniz(const OrGraph& g);
OrGraph parse_leibniz(std::string_view record);

/// Canonical Leibniz graphs (Jacobiator fixed) with rational coefficients.
using LeibnizSum = OrGraphSum;

/// Lines `coeff<TAB>record`, like GraphSum files.
std::string format_leibniz_sum(const LeibnizSum& s);
LeibnizSum parse_leibniz_sum(std::string_view text);

void add_leibniz(LeibnizSum& s, const OrGraph& g, const Rational& c);

/// Jacobiator-content route: vertex 0 carries jacobiator(P), others P.
SuperPoly expand_leibniz(const OrGraph& g, const SuperPoly& p);
SuperPoly expand_leibniz(const LeibnizSum& s, const SuperPoly& p);

/// The Jacobiator vertex replaced by two bivector vertices joined by an arrow
/// (the cyclic three-term expansion), arrows at the Jacobiator redistributed
/// by the Leibniz rule. Result is a sum of canonical Kontsevich orgraphs.
OrGraphSum kontsevich_expansion(const OrGraph& g);
/// Evaluates kontsevich_expansion with every content equal to P.
SuperPoly expand_leibniz_cyclic(const OrGraph& g, const SuperPoly& p);

/// Leibniz graphs whose expansion equals sum_i jacobiator_insertion(gamma, P, i).
LeibnizSum insertion_diamond(const GraphSum& gamma);

/// Nonzero canonical Leibniz graphs with `bivectors` bivector vertices and
/// `arrows` internal arrows, ascending.
std::vector<OrGraph> enumerate_leibniz_graphs(int bivectors, int arrows);

struct FactorizationRound {
  int round = 0;
  int new_graphs = 0;
  int active_graphs = 0;
  int rank = 0;
  std::size_t residual_terms = 0;
};

struct Factorization {
  LeibnizSum diamond;
  SuperPoly residual;
  std::vector<FactorizationRound> rounds;
  int pool = 0;
  int bivectors = 0;
  bool verified = false;  // target - expand(diamond) == residual, recomputed
};

/// Iterative ansatz: each round adds the pool graphs whose expansion shares a
/// term with the current residual, then solves exactly for the target.
/// P must be a bivector whose coefficients are distinct abstract functions.
Factorization leibniz_ansatz_iterate(const SuperPoly& target, const SuperPoly& p, int max_rounds = 8);

std::string format_factorization(const Factorization& f);

struct MetagraphReport {
  std::vector<OrGraph> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> components;
  std::vector<int> diameters;  // per component
  int cycle_rank = 0;          // E - V + C
};

/// Nodes are the Leibniz graphs of all solutions; two are adjacent when their
/// Kontsevich expansions share an orgraph.
MetagraphReport leibniz_metagraph(const std::vector<LeibnizSum>& solutions);
std::string format_metagraph(const MetagraphReport& r);

}  // namespace graphflow
