#include "graphflow/orgraph.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/schouten.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace graphflow {

OrGraph::OrGraph(int n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows)) {
  if (n < 0 || n > kMaxGraphVertices) throw InputError("oriented graph vertex count out of range");
  std::vector<Arrow> seen;
  for (const Arrow& a : arrows_) {
    if (a.from >= n || a.to >= n) throw InputError("arrow endpoint out of range");
    if (a.from == a.to) throw InputError("arrow is a tadpole");
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) throw InputError("repeated arrow");
    seen.push_back(a);
  }
}

OrGraph::OrGraph(int n, std::initializer_list<std::pair<int, int>> arrows)
    : OrGraph(n, [&] {
        std::vector<Arrow> v;
        for (auto [a, b] : arrows) v.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
        return v;
      }()) {}

std::vector<int> OrGraph::out_degrees() const {
  std::vector<int> d(n_, 0);
  for (const Arrow& a : arrows_) ++d[a.from];
  return d;
}

std::vector<int> OrGraph::in_degrees() const {
  std::vector<int> d(n_, 0);
  for (const Arrow& a : arrows_) ++d[a.to];
  return d;
}

OrCanonical canonical_form(const OrGraph& g, int fixed) {
  const int n = g.vertex_count();
  if (fixed < 0 || fixed > n) throw InputError("fixed vertex count out of range");
  if (n - fixed > 9) throw ResourceError("oriented canonical form limited to 9 movable vertices");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Arrow> best;
  int best_sign = 0;
  bool zero = false;
  bool first = true;
  do {
    std::vector<Arrow> relabeled;
    relabeled.reserve(g.arrows().size());
    for (const Arrow& a : g.arrows())
      relabeled.push_back({static_cast<std::uint8_t>(perm[a.from]), static_cast<std::uint8_t>(perm[a.to])});
    int sign = permutation_sign(relabeled);
    std::sort(relabeled.begin(), relabeled.end());
    if (first || relabeled < best) {
      best = std::move(relabeled);
      best_sign = sign;
      zero = false;
      first = false;
    } else if (relabeled == best && sign != best_sign) {
      zero = true;
    }
  } while (std::next_permutation(perm.begin() + fixed, perm.end()));
  return {OrGraph(n, std::move(best)), zero ? 0 : best_sign};
}

void add_canonical(OrGraphSum& sum, const OrGraph& g, const Rational& c, int fixed) {
  if (c == 0) return;
  OrCanonical cf = canonical_form(g, fixed);
  if (cf.sign == 0) return;
  auto [it, inserted] = sum.try_emplace(cf.graph, cf.sign * c);
  if (!inserted) {
    it->second += cf.sign * c;
    if (it->second == 0) sum.erase(it);
  }
}

OrGraphSum orientations(const UnorientedGraph& g, int max_out, bool canonicalize) {
  const int e = g.edge_count();
  if (e > 24) throw ResourceError("too many edges to orient");
  OrGraphSum out;
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    std::vector<Arrow> arrows;
    std::vector<int> out_deg(g.vertex_count(), 0);
    bool ok = true;
    for (int k = 0; k < e; ++k) {
      const Edge& ed = g.edges()[k];
      Arrow a = (mask >> k & 1u) ? Arrow{ed.hi, ed.lo} : Arrow{ed.lo, ed.hi};
      if (++out_deg[a.from] > max_out) ok = false;
      arrows.push_back(a);
    }
    if (!ok) continue;
    OrGraph og(g.vertex_count(), std::move(arrows));
    if (canonicalize)
      add_canonical(out, og, 1);
    else
      out[og] += 1;
  }
  return out;
}

SuperPoly evaluate_local(const OrGraph& g, const VertexContent& contents) {
  const int n = g.vertex_count();
  const int e = g.arrow_count();
  if (static_cast<int>(contents.size()) != n) throw InputError("content count differs from vertex count");
  if (n == 0) throw InputError("empty graph");
  const int dim = contents[0].dim();
  std::vector<int> deg(n);
  for (int w = 0; w < n; ++w) {
    if (!contents[w].is_zero() && contents[w].dim() != dim) throw InputError("content dimension mismatch");
    deg[w] = multivector_degree(contents[w]);
  }

  // Operators are applied in arrow order, so the word reads from the last
  // arrow to the first; group it by source vertex.
  int inversions = 0;
  for (int p = e - 1; p >= 0; --p)
    for (int q = p - 1; q >= 0; --q)
      if (g.arrows()[p].from > g.arrows()[q].from) ++inversions;
  std::vector<int> slots(n, 0);
  for (const Arrow& a : g.arrows()) ++slots[a.from];
  int passes = 0;
  int below = 0;
  for (int w = 0; w < n; ++w) {
    passes += slots[w] * below;
    below += deg[w];
  }
  const int global_sign = (inversions + passes) % 2 == 0 ? 1 : -1;

  double combos = 1;
  for (int k = 0; k < e; ++k) combos *= dim;
  if (combos > 5e7) throw ResourceError("too many index assignments for local evaluation");

  std::vector<int> idx(e, 0);
  SuperPolyBuilder out(dim);
  std::map<std::pair<int, std::vector<int>>, SuperPoly> memo;
  while (true) {
    SuperPoly value = SuperPoly::constant(dim, global_sign);
    for (int w = 0; w < n && !value.is_zero(); ++w) {
      std::vector<int> key;
      for (int k = 0; k < e; ++k)
        if (g.arrows()[k].from == w || g.arrows()[k].to == w) key.push_back(idx[k]);
      auto it = memo.find({w, key});
      if (it == memo.end()) {
        SuperPoly local = contents[w];
        for (int k = 0; k < e; ++k)
          if (g.arrows()[k].from == w) local = local.derivative_odd(idx[k]);
        for (int k = 0; k < e; ++k)
          if (g.arrows()[k].to == w) local = local.derivative_x(idx[k]);
        it = memo.emplace(std::make_pair(w, key), std::move(local)).first;
      }
      value = value * it->second;
    }
    out.add(value);
    int pos = 0;
    while (pos < e && ++idx[pos] == dim) idx[pos++] = 0;
    if (pos == e) break;
  }
  return out.finish();
}

std::string format_orgraph(const OrGraph& g) {
  std::string s = std::to_string(g.vertex_count()) + " " + std::to_string(g.arrow_count());
  for (const Arrow& a : g.arrows()) s += " " + std::to_string(a.from) + " " + std::to_string(a.to);
  return s;
}

OrGraph parse_orgraph(std::string_view record) {
  std::istringstream in{std::string(record)};
  int n = 0, e = 0;
  if (!(in >> n >> e) || n < 0 || e < 0) throw InputError("oriented graph record needs 'n E'");
  std::vector<Arrow> arrows;
  for (int k = 0; k < e; ++k) {
    int a = 0, b = 0;
    if (!(in >> a >> b)) throw InputError("oriented graph record has fewer arrows than declared");
    if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("arrow endpoint out of range");
    arrows.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
  }
  std::string extra;
  if (in >> extra) throw InputError("trailing data in oriented graph record");
  return OrGraph(n, std::move(arrows));
}

}  // namespace graphflow
