#include "graphflow/orient.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/parallel.hpp"
#include "graphflow/schouten.hpp"

#include <bit>

namespace graphflow {

namespace {

void check_contents(const VertexContent& contents, int n) {
  if (static_cast<int>(contents.size()) != n)
    throw InputError("expected " + std::to_string(n) + " vertex contents, got " + std::to_string(contents.size()));
  if (n == 0) throw InputError("graph has no vertices");
  const int dim = contents[0].dim();
  if (dim <= 0) throw InputError("content has no dimension");
  for (const SuperPoly& c : contents)
    if (c.dim() != dim) throw InputError("content dimension mismatch");
  if (n * dim > kMaxOddVariables) throw ResourceError("vertex copies exceed the odd variable budget");
}

void add_x_derivative(SuperPolyBuilder& out, std::uint32_t odd, const Monomial& mono, const Rational& c, int i,
                      int copy) {
  const auto& fs = mono.factors();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    Atom a = fs[k].atom;
    if (a.kind() == Atom::Kind::Parameter || a.copy() != copy) continue;
    if (a.kind() == Atom::Kind::Coordinate) {
      if (a.index() == i) out.add(odd, mono.lowered(k), c * fs[k].exponent);
    } else {
      Atom d = Atom::jet(a.index(), a.derivatives().incremented(i), copy);
      out.add(odd, mono.lowered_times(k, d), c * fs[k].exponent);
    }
  }
}

void apply_directed(SuperPolyBuilder& out, const SuperPoly::Term& t, int from, int to, int dim) {
  for (int i = 0; i < dim; ++i) {
    const std::uint32_t bit = 1u << (from * dim + i);
    if (!(t.odd & bit)) continue;
    const bool negative = std::popcount(t.odd & (bit - 1)) % 2 != 0;
    add_x_derivative(out, t.odd ^ bit, t.mono, negative ? -t.coeff : t.coeff, i, to);
  }
}

void apply_term(SuperPolyBuilder& out, const SuperPoly::Term& t, const EdgeOperator& op, int dim) {
  apply_directed(out, t, op.from, op.to, dim);
  if (op.both) apply_directed(out, t, op.to, op.from, dim);
}

SuperPoly step_serial(const SuperPoly& p, const EdgeOperator& op) {
  SuperPolyBuilder out(p.dim());
  for (const auto& t : p.terms()) apply_term(out, t, op, p.dim());
  return out.finish();
}

SuperPoly step_parallel(const SuperPoly& p, const EdgeOperator& op) {
  const long count = static_cast<long>(p.size());
  if (count < 256 || max_threads() == 1) return step_serial(p, op);
  const int threads = max_threads();
  std::vector<SuperPoly> partial(threads, SuperPoly(p.dim()));
#pragma omp parallel num_threads(threads)
  {
    SuperPolyBuilder local(p.dim());
#pragma omp for schedule(static)
    for (long k = 0; k < count; ++k) apply_term(local, p.terms()[k], op, p.dim());
    partial[thread_id()] = local.finish();
  }
  SuperPolyBuilder out(p.dim());
  for (const SuperPoly& s : partial) out.add(s);
  return out.finish();
}

std::vector<EdgeOperator> edge_operators(const UnorientedGraph& g) {
  std::vector<EdgeOperator> ops;
  for (const Edge& e : g.edges()) ops.push_back({e.lo, e.hi, true});
  return ops;
}

void check_degree(const SuperPoly& out, const VertexContent& contents, int edges) {
  if (out.is_zero()) return;
  int expected = -edges;
  for (const SuperPoly& c : contents) {
    if (c.is_zero()) return;
    auto d = c.odd_degree();
    if (!d) return;
    expected += *d;
  }
  if (out.odd_degree() != expected) throw std::logic_error("degree bookkeeping violated in graph evaluation");
}

VertexContent repeated(const SuperPoly& p, int n) { return VertexContent(n, p); }

}  // namespace

SuperPoly place_contents(const VertexContent& contents) {
  const int dim = contents.at(0).dim();
  SuperPoly product = SuperPoly::constant(dim, 1);
  for (std::size_t v = 0; v < contents.size(); ++v) {
    for (const auto& t : contents[v].terms())
      if (t.odd >> dim) throw InputError("vertex content uses odd variables beyond its dimension");
    product = product * contents[v].placed_on_copy(static_cast<int>(v));
  }
  return product;
}

SuperPoly apply_operators(SuperPoly product, const std::vector<EdgeOperator>& ops) {
  for (const EdgeOperator& op : ops) {
    if (product.is_zero()) break;
    product = step_parallel(product, op);
  }
  return product;
}

SuperPoly evaluate(const UnorientedGraph& g, const VertexContent& contents) {
  check_contents(contents, g.vertex_count());
  SuperPoly out = apply_operators(place_contents(contents), edge_operators(g)).restricted_to_diagonal();
  check_degree(out, contents, g.edge_count());
  return out;
}

SuperPoly evaluate_arrows(const OrGraph& g, const VertexContent& contents) {
  check_contents(contents, g.vertex_count());
  std::vector<EdgeOperator> ops;
  for (const Arrow& a : g.arrows()) ops.push_back({a.from, a.to, false});
  return apply_operators(place_contents(contents), ops).restricted_to_diagonal();
}

SuperPoly orient_flow(const GraphSum& gamma, const SuperPoly& p) {
  SuperPolyBuilder out(p.dim());
  for (const auto& [g, c] : gamma.terms()) out.add(evaluate(g, repeated(p, g.vertex_count())), c);
  return out.finish();
}

SuperPoly jacobiator_insertion(const GraphSum& gamma, const SuperPoly& p, int i) {
  const SuperPoly pp = schouten(p, p);
  SuperPolyBuilder out(p.dim());
  for (const auto& [g, c] : gamma.terms()) {
    if (i < 0 || i >= g.vertex_count()) throw InputError("jacobiator insertion vertex out of range");
    VertexContent contents = repeated(p, g.vertex_count());
    contents[i] = pp;
    out.add(evaluate(g, contents), c);
  }
  return out.finish();
}

SuperPoly jacobiator_insertion_sum(const GraphSum& gamma, const SuperPoly& p) {
  const SuperPoly pp = schouten(p, p);
  SuperPolyBuilder out(p.dim());
  for (const auto& [g, c] : gamma.terms())
    for (int i = 0; i < g.vertex_count(); ++i) {
      VertexContent contents = repeated(p, g.vertex_count());
      contents[i] = pp;
      out.add(evaluate(g, contents), c);
    }
  return out.finish();
}

namespace serial {

SuperPoly apply_operators(SuperPoly product, const std::vector<EdgeOperator>& ops) {
  for (const EdgeOperator& op : ops) {
    if (product.is_zero()) break;
    product = step_serial(product, op);
  }
  return product;
}

SuperPoly evaluate(const UnorientedGraph& g, const VertexContent& contents) {
  check_contents(contents, g.vertex_count());
  SuperPoly out = serial::apply_operators(place_contents(contents), edge_operators(g)).restricted_to_diagonal();
  check_degree(out, contents, g.edge_count());
  return out;
}

SuperPoly orient_flow(const GraphSum& gamma, const SuperPoly& p) {
  SuperPolyBuilder out(p.dim());
  for (const auto& [g, c] : gamma.terms()) out.add(serial::evaluate(g, repeated(p, g.vertex_count())), c);
  return out.finish();
}

}  // namespace serial

SuperPoly evaluate_via_orgraphs(const UnorientedGraph& g, const VertexContent& contents) {
  check_contents(contents, g.vertex_count());
  SuperPolyBuilder out(contents[0].dim());
  for (const auto& [og, c] : orientations(g, kMaxOddVariables, false)) out.add(evaluate_local(og, contents), c);
  return out.finish();
}

}  // namespace graphflow
