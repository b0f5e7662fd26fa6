#include "graphflow/leibniz.hpp"

#include "graphflow/cancel.hpp"
#include "graphflow/errors.hpp"
#include "graphflow/linalg.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <unordered_set>

namespace graphflow {

namespace {

constexpr int kJacobiatorSlots = 3;
constexpr int kBivectorSlots = 2;
constexpr int kMaxLeibnizBivectors = 4;

int slots(int v) { return v == 0 ? kJacobiatorSlots : kBivectorSlots; }

}  // namespace

void validate_leibniz(const OrGraph& g) {
  if (g.vertex_count() < 1) throw InputError("Leibniz graph needs the Jacobiator vertex");
  auto out = g.out_degrees();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (out[v] > slots(v))
      throw InputError("vertex " + std::to_string(v) + " has more arrows than odd slots");
}

int leibniz_sinks(const OrGraph& g) {
  return kJacobiatorSlots + kBivectorSlots * (g.vertex_count() - 1) - g.arrow_count();
}

std::string format_leibniz(const OrGraph& g) {
  validate_leibniz(g);
  for (std::size_t k = 1; k < g.arrows().size(); ++k)
    if (g.arrows()[k].from < g.arrows()[k - 1].from)
      throw InputError("Leibniz record needs arrows grouped by source");
  std::string s = std::to_string(g.vertex_count()) + " " + std::to_string(leibniz_sinks(g));
  int sink = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    s += v == 0 ? " J" : " P";
    int used = 0;
    for (const Arrow& a : g.arrows())
      if (a.from == v) {
        s += " " + std::to_string(a.to);
        ++used;
      }
    for (; used < slots(v); ++used) s += " s" + std::to_string(sink++);
  }
  return s;
}

OrGraph parse_leibniz(std::string_view record) {
  std::istringstream in{std::string(record)};
  int n = 0, k = 0;
  if (!(in >> n >> k) || n < 1 || k < 0) throw InputError("Leibniz record needs 'n k' with n >= 1");
  std::vector<Arrow> arrows;
  std::vector<bool> sink_seen(k, false);
  for (int v = 0; v < n; ++v) {
    std::string marker;
    if (!(in >> marker)) throw InputError("Leibniz record ends before vertex " + std::to_string(v));
    if (marker != (v == 0 ? "J" : "P"))
      throw InputError("vertex " + std::to_string(v) + " must be marked " + (v == 0 ? "J" : "P"));
    for (int slot = 0; slot < slots(v); ++slot) {
      std::string t;
      if (!(in >> t)) throw InputError("vertex " + std::to_string(v) + " has too few targets");
      if (t[0] == 's') {
        int j = -1;
        try {
          j = std::stoi(t.substr(1));
        } catch (const std::exception&) {
          throw InputError("bad sink target '" + t + "'");
        }
        if (j < 0 || j >= k || sink_seen[j]) throw InputError("sink '" + t + "' out of range or repeated");
        sink_seen[j] = true;
      } else {
        int w = -1;
        try {
          w = std::stoi(t);
        } catch (const std::exception&) {
          throw InputError("bad target '" + t + "'");
        }
        if (w < 0 || w >= n) throw InputError("target '" + t + "' out of range");
        arrows.push_back({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(w)});
      }
    }
  }
  std::string extra;
  if (in >> extra) throw InputError("trailing data in Leibniz record");
  if (std::find(sink_seen.begin(), sink_seen.end(), false) != sink_seen.end())
    throw InputError("declared sink count does not match the sinks used");
  OrGraph g(n, std::move(arrows));
  validate_leibniz(g);
  return g;
}

void add_leibniz(LeibnizSum& s, const OrGraph& g, const Rational& c) {
  validate_leibniz(g);
  add_canonical(s, g, c, 1);
}

std::string format_leibniz_sum(const LeibnizSum& s) {
  std::string out;
  for (const auto& [g, c] : s) out += to_string(c) + "\t" + format_leibniz(g) + "\n";
  return out;
}

LeibnizSum parse_leibniz_sum(std::string_view text) {
  LeibnizSum s;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto tab = line.find('\t');
    // the zero sum is printed as a lone "0"
    if (tab == std::string::npos && boost::algorithm::trim_copy(line) == "0") continue;
    if (tab == std::string::npos) throw InputError("line " + std::to_string(line_no) + ": expected coeff<TAB>record");
    try {
      add_leibniz(s, parse_leibniz(line.substr(tab + 1)), parse_rational(line.substr(0, tab)));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return s;
}

SuperPoly expand_leibniz(const OrGraph& g, const SuperPoly& p) {
  validate_leibniz(g);
  VertexContent contents(g.vertex_count(), p);
  contents[0] = jacobiator(p);
  return evaluate_arrows(g, contents);
}

SuperPoly expand_leibniz(const LeibnizSum& s, const SuperPoly& p) {
  SuperPolyBuilder out(p.dim());
  for (const auto& [g, c] : s) out.add(expand_leibniz(g, p), c);
  return out.finish();
}

OrGraphSum kontsevich_expansion(const OrGraph& g) {
  validate_leibniz(g);
  const int n = g.vertex_count();
  const int b = n;  // second half of the Jacobiator; vertex 0 keeps the first
  std::vector<int> touching;
  for (int k = 0; k < g.arrow_count(); ++k) {
    if (g.arrows()[k].from == 0) touching.push_back(2 * k);
    if (g.arrows()[k].to == 0) touching.push_back(2 * k + 1);
  }
  OrGraphSum out;
  for (Arrow inner : {Arrow{0, static_cast<std::uint8_t>(b)}, Arrow{static_cast<std::uint8_t>(b), 0}}) {
    for (std::uint32_t mask = 0; mask < (1u << touching.size()); ++mask) {
      std::vector<Arrow> arrows{inner};
      for (const Arrow& a : g.arrows()) arrows.push_back(a);
      for (std::size_t t = 0; t < touching.size(); ++t) {
        if (!(mask >> t & 1u)) continue;
        Arrow& a = arrows[1 + touching[t] / 2];
        (touching[t] % 2 == 0 ? a.from : a.to) = static_cast<std::uint8_t>(b);
      }
      std::vector<int> out_deg(n + 1, 0);
      bool ok = true;
      for (const Arrow& a : arrows) ok = ok && ++out_deg[a.from] <= kBivectorSlots && a.from != a.to;
      if (!ok) continue;
      std::vector<Arrow> sorted = arrows;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      // jacobiator(P) = -(1/2) Or(stick)(P, P)
      add_canonical(out, OrGraph(n + 1, std::move(arrows)), Rational(-1, 2));
    }
  }
  return out;
}

SuperPoly expand_leibniz_cyclic(const OrGraph& g, const SuperPoly& p) {
  SuperPolyBuilder out(p.dim());
  for (const auto& [og, c] : kontsevich_expansion(g))
    out.add(evaluate_local(og, VertexContent(og.vertex_count(), p)), c);
  return out.finish();
}

LeibnizSum insertion_diamond(const GraphSum& gamma) {
  LeibnizSum out;
  for (const auto& [g, c] : gamma.terms()) {
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
      std::vector<int> relabel(n);
      for (int w = 0; w < n; ++w) relabel[w] = w == i ? 0 : (w < i ? w + 1 : w);
      UnorientedGraph moved = g.relabeled(relabel);
      for (const auto& [og, mult] : orientations(moved, kJacobiatorSlots, false)) {
        auto deg = og.out_degrees();
        if (std::any_of(deg.begin() + 1, deg.end(), [](int d) { return d > kBivectorSlots; })) continue;
        // The insertion carries [[P,P]] = 2 jacobiator(P).
        add_canonical(out, og, 2 * c * mult, 1);
      }
    }
  }
  return out;
}

std::vector<OrGraph> enumerate_leibniz_graphs(int bivectors, int arrows) {
  if (bivectors < 0 || bivectors > kMaxLeibnizBivectors)
    throw ResourceError("Leibniz enumeration limited to " + std::to_string(kMaxLeibnizBivectors) + " bivector vertices");
  const int n = bivectors + 1;
  std::vector<Arrow> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pairs.push_back({static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)});
  if (arrows < 0 || arrows > static_cast<int>(pairs.size())) return {};
  std::set<OrGraph> found;
  std::vector<int> choice(arrows);
  for (int k = 0; k < arrows; ++k) choice[k] = k;
  const int m = static_cast<int>(pairs.size());
  while (true) {
    std::vector<Arrow> chosen;
    std::vector<int> out_deg(n, 0);
    bool ok = true;
    for (int k : choice) {
      chosen.push_back(pairs[k]);
      ok = ok && ++out_deg[pairs[k].from] <= slots(pairs[k].from);
    }
    if (ok) {
      OrCanonical cf = canonical_form(OrGraph(n, std::move(chosen)), 1);
      if (cf.sign != 0) found.insert(cf.graph);
    }
    int pos = arrows - 1;
    while (pos >= 0 && choice[pos] == m - arrows + pos) --pos;
    if (pos < 0) break;
    ++choice[pos];
    for (int k = pos + 1; k < arrows; ++k) choice[k] = choice[k - 1] + 1;
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Iterative ansatz

namespace {

struct KeyLess {
  bool operator()(const std::pair<std::uint32_t, Monomial>& a, const std::pair<std::uint32_t, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  }
};

using RowIndex = std::map<std::pair<std::uint32_t, Monomial>, int, KeyLess>;

SparseVector to_rows(const SuperPoly& p, const RowIndex& rows) {
  SparseVector v;
  for (const auto& t : p.terms()) v.emplace(rows.at({t.odd, t.mono}), t.coeff);
  return v;
}

}  // namespace

Factorization leibniz_ansatz_iterate(const SuperPoly& target, const SuperPoly& p, int max_rounds) {
  Factorization result;
  result.residual = target;
  if (target.is_zero()) {
    result.verified = true;
    return result;
  }
  if (multivector_degree(p) != 2) throw InputError("factorization needs a bivector P");
  if (p.function_degree() != 1) throw InputError("factorization needs P with abstract coefficient functions");
  auto fdeg = target.function_degree();
  if (!fdeg) throw InputError("target is not homogeneous in P");
  const int bivectors = *fdeg - 2;
  const int out_degree = multivector_degree(target);
  const int arrows = kJacobiatorSlots + kBivectorSlots * bivectors - out_degree;
  if (bivectors < 0 || arrows < 0) throw InputError("target degree admits no Leibniz graphs");
  result.bivectors = bivectors;

  std::vector<OrGraph> pool = enumerate_leibniz_graphs(bivectors, arrows);
  result.pool = static_cast<int>(pool.size());
  std::vector<SuperPoly> values(pool.size());
  const long count = static_cast<long>(pool.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k)
    if (!cancel_requested()) values[k] = expand_leibniz(pool[k], p);
  check_cancel();

  std::vector<bool> active(pool.size(), false);
  for (int round = 1; round <= max_rounds && !result.residual.is_zero(); ++round) {
    check_cancel();
    FactorizationRound log;
    log.round = round;
    // Search keys: the residual plus every term brought in by an active graph
    // that the target lacks; those must cancel among further graphs.
    std::unordered_set<TermKey, TermKeyHash> residual_keys, target_keys;
    for (const auto& t : target.terms()) target_keys.insert({t.odd, t.mono});
    for (const auto& t : result.residual.terms()) residual_keys.insert({t.odd, t.mono});
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (active[k])
        for (const auto& t : values[k].terms())
          if (!target_keys.count({t.odd, t.mono})) residual_keys.insert({t.odd, t.mono});
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (active[k] || values[k].is_zero()) continue;
      bool hit = std::any_of(values[k].terms().begin(), values[k].terms().end(),
                             [&](const SuperPoly::Term& t) { return residual_keys.count({t.odd, t.mono}) != 0; });
      if (hit) {
        active[k] = true;
        ++log.new_graphs;
      }
    }
    if (log.new_graphs == 0) break;

    RowIndex rows;
    for (const auto& t : target.terms()) rows.emplace(std::make_pair(t.odd, t.mono), 0);
    std::vector<std::size_t> columns;
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (active[k]) {
        columns.push_back(k);
        for (const auto& t : values[k].terms()) rows.emplace(std::make_pair(t.odd, t.mono), 0);
      }
    int next = 0;
    for (auto& [key, idx] : rows) idx = next++;
    std::vector<std::pair<std::uint32_t, Monomial>> keys;
    keys.reserve(rows.size());
    for (const auto& [key, idx] : rows) keys.push_back(key);

    ColumnEliminator elim;
    for (std::size_t k : columns) elim.add_column(to_rows(values[k], rows));
    auto red = elim.reduce(to_rows(target, rows));

    result.diamond.clear();
    for (const auto& [col, c] : red.combination) result.diamond.emplace(pool[columns[col]], c);
    std::vector<SuperPoly::Term> rest;
    for (const auto& [row, c] : red.remainder) rest.push_back({keys[row].first, keys[row].second, c});
    result.residual = SuperPoly::from_terms(target.dim(), std::move(rest));

    log.active_graphs = static_cast<int>(columns.size());
    log.rank = elim.rank();
    log.residual_terms = result.residual.size();
    result.rounds.push_back(log);
  }
  result.verified = (target - expand_leibniz(result.diamond, p)) == result.residual;
  return result;
}

std::string format_factorization(const Factorization& f) {
  std::ostringstream out;
  out << "leibniz graphs in pool: " << f.pool << " (bivector vertices " << f.bivectors << ")\n";
  for (const auto& r : f.rounds)
    out << "round " << r.round << ": new " << r.new_graphs << ", active " << r.active_graphs << ", rank " << r.rank
        << ", residual terms " << r.residual_terms << "\n";
  out << "diamond graphs: " << f.diamond.size() << "\n";
  out << "residual: " << (f.residual.is_zero() ? "0" : std::to_string(f.residual.size()) + " terms") << "\n";
  out << "verified: " << (f.verified ? "true" : "false") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Meta-graph

MetagraphReport leibniz_metagraph(const std::vector<LeibnizSum>& solutions) {
  MetagraphReport r;
  std::set<OrGraph> nodes;
  for (const auto& s : solutions)
    for (const auto& [g, c] : s) nodes.insert(g);
  r.nodes.assign(nodes.begin(), nodes.end());
  const int n = static_cast<int>(r.nodes.size());
  std::vector<std::set<OrGraph>> support(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [og, c] : kontsevich_expansion(r.nodes[i])) support[i].insert(og);
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool common = std::any_of(support[i].begin(), support[i].end(),
                                [&](const OrGraph& g) { return support[j].count(g) != 0; });
      if (common) {
        r.edges.emplace_back(i, j);
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  auto bfs = [&](int s) {
    std::vector<int> dist(n, -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          q.push_back(w);
        }
    }
    return dist;
  };
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    auto dist = bfs(s);
    for (int v = 0; v < n; ++v)
      if (dist[v] >= 0) {
        comp.push_back(v);
        seen[v] = true;
      }
    int diameter = 0;
    for (int v : comp)
      for (int d : bfs(v)) diameter = std::max(diameter, d);
    r.components.push_back(std::move(comp));
    r.diameters.push_back(diameter);
  }
  r.cycle_rank = static_cast<int>(r.edges.size()) - n + static_cast<int>(r.components.size());
  return r;
}

std::string format_metagraph(const MetagraphReport& r) {
  std::ostringstream out;
  out << "nodes: " << r.nodes.size() << "\n";
  out << "edges: " << r.edges.size() << "\n";
  out << "components: " << r.components.size() << "\n";
  for (std::size_t c = 0; c < r.components.size(); ++c)
    out << "component " << c << ": size " << r.components[c].size() << ", diameter " << r.diameters[c] << "\n";
  out << "cycle rank: " << r.cycle_rank << "\n";
  for (std::size_t i = 0; i < r.nodes.size(); ++i) out << "node " << i << "\t" << format_leibniz(r.nodes[i]) << "\n";
  for (const auto& [a, b] : r.edges) out << "edge " << a << " " << b << "\n";
  return out.str();
}

}  // namespace graphflow
