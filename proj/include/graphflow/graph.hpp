#pragma once

#include "graphflow/rational.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphflow {

/// Unordered vertex pair, stored with lo < hi.
struct Edge {
  std::uint8_t lo = 0;
  std::uint8_t hi = 0;

  Edge() = default;
  Edge(int u, int v);

  auto operator<=>(const Edge&) const = default;
};

inline constexpr int kMaxGraphVertices = 16;

/// Simple graph with parity-even vertices and parity-odd edges. The edge list
/// order is the wedge order of the edges.
class UnorientedGraph {
 public:
  UnorientedGraph() = default;

  /// Throws InputError on tadpoles, repeated pairs or out-of-range labels.
  UnorientedGraph(int n, std::vector<Edge> edges);
  UnorientedGraph(int n, std::initializer_list<std::pair<int, int>> edges);

  /// Returns nullopt where the strict constructor would reject a repeated
  /// pair; tadpoles and bad labels still throw.
  static std::optional<UnorientedGraph> permissive(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Adjacency rows as bitmasks.
  std::vector<std::uint32_t> adjacency() const;
  std::vector<int> degrees() const;

  /// Relabels vertices by old -> new map; keeps wedge order.
  UnorientedGraph relabeled(std::span<const int> old_to_new) const;

  auto operator<=>(const UnorientedGraph&) const = default;

 private:
  struct Unchecked {};
  UnorientedGraph(Unchecked, int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Common graphs.
UnorientedGraph single_vertex();
UnorientedGraph stick();
UnorientedGraph complete_graph(int n);
UnorientedGraph cycle_graph(int n);
UnorientedGraph path_graph(int n);

/// Result of canonical labeling. `graph` is the lexicographically least
/// relabeling with sorted edges; sign is the parity of the edge permutation
/// taking the relabeled wedge order to sorted order, or 0 for zero graphs.
struct CanonicalForm {
  UnorientedGraph graph;
  int sign = 0;
  std::vector<int> old_to_new;
};

/// Canonical labeling backend. Implementations must agree on the canonical
/// graph; the sign is then determined.
class LabelingBackend {
 public:
  virtual ~LabelingBackend() = default;
  virtual CanonicalForm canonical_form(const UnorientedGraph& g) const = 0;
};

/// Branch-and-bound over vertex orders with twin pruning (default).
class SearchLabeling final : public LabelingBackend {
 public:
  CanonicalForm canonical_form(const UnorientedGraph& g) const override;
};

/// All n! relabelings. Test oracle; refuses n > 9.
class ExhaustiveLabeling final : public LabelingBackend {
 public:
  CanonicalForm canonical_form(const UnorientedGraph& g) const override;
};

const LabelingBackend& default_labeling();

CanonicalForm canonical_form(const UnorientedGraph& g);
bool is_zero(const UnorientedGraph& g);

/// Sign of the permutation sorting `seq` (all entries distinct).
template <typename T>
int permutation_sign(const std::vector<T>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j] < seq[i]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Rational linear combination of canonical graphs.
class GraphSum {
 public:
  using Terms = std::map<UnorientedGraph, Rational>;

  GraphSum() = default;
  explicit GraphSum(const UnorientedGraph& g, const Rational& c = 1);

  /// Canonicalizes and accumulates; zero graphs and zero coefficients vanish.
  void add(const UnorientedGraph& g, const Rational& c);
  /// Accumulates a term already in canonical form.
  void add_canonical(const UnorientedGraph& canonical, const Rational& c);
  /// Like add(), but a repeated edge contributes nothing.
  void add_raw(int n, std::vector<Edge> edges, const Rational& c);

  GraphSum& operator+=(const GraphSum& other);
  GraphSum& operator-=(const GraphSum& other);
  GraphSum& operator*=(const Rational& c);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// (n, E) if every term shares it; nullopt for empty or mixed sums.
  std::optional<std::pair<int, int>> bigrading() const;

  bool operator==(const GraphSum&) const = default;

 private:
  Terms terms_;
};

GraphSum operator+(GraphSum a, const GraphSum& b);
GraphSum operator-(GraphSum a, const GraphSum& b);
GraphSum operator*(const Rational& c, GraphSum s);

GraphSum sum_add(const GraphSum& a, const GraphSum& b);
GraphSum sum_scale(const GraphSum& s, const Rational& c);

struct GraphStats {
  UnorientedGraph graph;
  Rational coefficient = 1;  // 1 for a lone graph
  std::optional<int> diameter;  // nullopt when disconnected
  std::vector<int> valencies;   // sorted ascending
  std::map<int, int> valency_histogram;
  bool connected = false;
  int components = 0;
  int bottlenecks = 0;  // cut vertices
  int bridges = 0;
};

std::vector<GraphStats> graph_stats(const GraphSum& s);
GraphStats graph_stats(const UnorientedGraph& g);
std::string format_stats(const std::vector<GraphStats>& rows);

// Text formats. A graph record is `n E u v u v ...` with 0-based labels in
// wedge order; a GraphSum line is `coeff<TAB>record`.
std::string format_graph(const UnorientedGraph& g);
UnorientedGraph parse_graph(std::string_view record);
/// Edge list "0 1;1 2" with vertex count max label + 1 unless n is given.
UnorientedGraph parse_edge_list(std::string_view text, std::optional<int> n = std::nullopt);
std::string format_graph_sum(const GraphSum& s);
GraphSum parse_graph_sum(std::string_view text);
GraphSum read_graph_sum(const std::string& path);
void write_graph_sum(const std::string& path, const GraphSum& s);

}  // namespace graphflow
