#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace graphflow {

namespace {

int leaf_sign(const UnorientedGraph& g, const std::vector<int>& old_to_new) {
  std::vector<Edge> relabeled;
  relabeled.reserve(g.edges().size());
  for (const Edge& e : g.edges()) relabeled.emplace_back(old_to_new[e.lo], old_to_new[e.hi]);
  return permutation_sign(relabeled);
}

// The lex-least sorted edge list is the lex-greatest row-major upper-triangle
// adjacency string; rows are compared as integers with column b at bit n-1-b.
class Search {
 public:
  explicit Search(const UnorientedGraph& g)
      : g_(g), n_(g.vertex_count()), adj_(g.adjacency()), order_(n_), twin_class_(n_) {
    for (int v = 0; v < n_; ++v) {
      twin_class_[v] = v;
      for (int u = 0; u < v; ++u) {
        if (twins(u, v)) {
          twin_class_[v] = twin_class_[u];
          // Transposing twins permutes the edges {u,w} <-> {v,w} pairwise.
          if (std::popcount(adj_[u] & ~(1u << v)) % 2 != 0) zero_ = true;
          break;
        }
      }
    }
  }

  CanonicalForm run() {
    if (n_ == 0) return {g_, 1, {}};
    descend(0, 0);
    std::vector<Edge> edges;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (best_rows_[a] >> (n_ - 1 - b) & 1u) edges.emplace_back(a, b);
    auto canon = UnorientedGraph::permissive(n_, std::move(edges));
    return {*canon, zero_ ? 0 : best_sign_, best_old_to_new_};
  }

 private:
  bool twins(int u, int v) const {
    return (adj_[u] & ~(1u << v)) == (adj_[v] & ~(1u << u));
  }

  bool adjacent(int u, int v) const { return adj_[u] >> v & 1u; }

  // Upper bound on rows 0..depth-1 versus the incumbent; true if strictly worse.
  bool dominated(int depth, std::uint32_t used) const {
    if (best_rows_.empty()) return false;
    for (int a = 0; a < depth; ++a) {
      std::uint32_t row = 0;
      for (int b = a + 1; b < depth; ++b)
        if (adjacent(order_[a], order_[b])) row |= 1u << (n_ - 1 - b);
      int free = std::popcount(adj_[order_[a]] & ~used);
      for (int j = 0; j < free; ++j) row |= 1u << (n_ - 1 - (depth + j));
      if (row < best_rows_[a]) return true;
      if (row > best_rows_[a]) return false;
    }
    return false;
  }

  void leaf() {
    std::vector<std::uint32_t> rows(n_, 0);
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (adjacent(order_[a], order_[b])) rows[a] |= 1u << (n_ - 1 - b);
    std::vector<int> old_to_new(n_);
    for (int a = 0; a < n_; ++a) old_to_new[order_[a]] = a;
    int sign = leaf_sign(g_, old_to_new);
    if (best_rows_.empty() || rows > best_rows_) {
      best_rows_ = std::move(rows);
      best_sign_ = sign;
      best_old_to_new_ = std::move(old_to_new);
    } else if (rows == best_rows_ && sign != best_sign_) {
      zero_ = true;
    }
  }

  void descend(int depth, std::uint32_t used) {
    if (depth == n_) {
      leaf();
      return;
    }
    std::uint32_t seen_class = 0;
    for (int v = 0; v < n_; ++v) {
      if (used >> v & 1u) continue;
      // Unused twins give isomorphic subtrees; explore one per class.
      if (seen_class >> twin_class_[v] & 1u) continue;
      seen_class |= 1u << twin_class_[v];
      order_[depth] = v;
      std::uint32_t next = used | (1u << v);
      if (dominated(depth + 1, next)) continue;
      descend(depth + 1, next);
    }
  }

  const UnorientedGraph& g_;
  int n_;
  std::vector<std::uint32_t> adj_;
  std::vector<int> order_;
  std::vector<int> twin_class_;
  std::vector<std::uint32_t> best_rows_;
  std::vector<int> best_old_to_new_;
  int best_sign_ = 1;
  bool zero_ = false;
};

}  // namespace

CanonicalForm SearchLabeling::canonical_form(const UnorientedGraph& g) const { return Search(g).run(); }

CanonicalForm ExhaustiveLabeling::canonical_form(const UnorientedGraph& g) const {
  const int n = g.vertex_count();
  if (n > 9) throw ResourceError("exhaustive labeling limited to 9 vertices");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Edge> best;
  std::vector<int> best_perm;
  int best_sign = 0;
  bool zero = false;
  bool first = true;
  do {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(perm[e.lo], perm[e.hi]);
    int sign = permutation_sign(edges);
    std::sort(edges.begin(), edges.end());
    if (first || edges < best) {
      best = std::move(edges);
      best_perm = perm;
      best_sign = sign;
      first = false;
    } else if (edges == best && sign != best_sign) {
      zero = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {*UnorientedGraph::permissive(n, std::move(best)), zero ? 0 : best_sign, best_perm};
}

const LabelingBackend& default_labeling() {
  static const SearchLabeling backend;
  return backend;
}

}  // namespace graphflow
