#include "graphflow/graph.hpp"

#include "graphflow/errors.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>

namespace graphflow {

Edge::Edge(int u, int v) {
  if (u > v) std::swap(u, v);
  lo = static_cast<std::uint8_t>(u);
  hi = static_cast<std::uint8_t>(v);
}

namespace {

void check_labels(int n, const std::vector<Edge>& edges) {
  if (n < 0 || n > kMaxGraphVertices)
    throw InputError("vertex count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kMaxGraphVertices));
  for (const Edge& e : edges) {
    if (e.hi >= n) throw InputError("edge endpoint out of range");
    if (e.lo == e.hi) throw InputError("tadpole at vertex " + std::to_string(e.lo));
  }
}

bool has_repeat(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) != edges.end();
}

}  // namespace

UnorientedGraph::UnorientedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  check_labels(n_, edges_);
  if (has_repeat(edges_)) throw InputError("repeated edge");
}

UnorientedGraph::UnorientedGraph(int n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<Edge> list;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0) throw InputError("negative vertex label");
    list.emplace_back(u, v);
  }
  *this = UnorientedGraph(n, std::move(list));
}

std::optional<UnorientedGraph> UnorientedGraph::permissive(int n, std::vector<Edge> edges) {
  check_labels(n, edges);
  if (has_repeat(edges)) return std::nullopt;
  return UnorientedGraph(Unchecked{}, n, std::move(edges));
}

std::vector<std::uint32_t> UnorientedGraph::adjacency() const {
  std::vector<std::uint32_t> adj(n_, 0);
  for (const Edge& e : edges_) {
    adj[e.lo] |= 1u << e.hi;
    adj[e.hi] |= 1u << e.lo;
  }
  return adj;
}

std::vector<int> UnorientedGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.lo];
    ++deg[e.hi];
  }
  return deg;
}

UnorientedGraph UnorientedGraph::relabeled(std::span<const int> old_to_new) const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.emplace_back(old_to_new[e.lo], old_to_new[e.hi]);
  return UnorientedGraph(Unchecked{}, n_, std::move(out));
}

UnorientedGraph single_vertex() { return UnorientedGraph(1, std::vector<Edge>{}); }
UnorientedGraph stick() { return UnorientedGraph(2, {{0, 1}}); }

UnorientedGraph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return UnorientedGraph(n, std::move(e));
}

UnorientedGraph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return UnorientedGraph(n, std::move(e));
}

UnorientedGraph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return UnorientedGraph(n, std::move(e));
}

CanonicalForm canonical_form(const UnorientedGraph& g) { return default_labeling().canonical_form(g); }

bool is_zero(const UnorientedGraph& g) { return canonical_form(g).sign == 0; }

// ---------------------------------------------------------------------------
// GraphSum

GraphSum::GraphSum(const UnorientedGraph& g, const Rational& c) { add(g, c); }

void GraphSum::add(const UnorientedGraph& g, const Rational& c) {
  if (c == 0) return;
  CanonicalForm cf = canonical_form(g);
  if (cf.sign == 0) return;
  add_canonical(cf.graph, cf.sign > 0 ? Rational(c) : Rational(-c));
}

void GraphSum::add_canonical(const UnorientedGraph& canonical, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(canonical, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GraphSum::add_raw(int n, std::vector<Edge> edges, const Rational& c) {
  auto g = UnorientedGraph::permissive(n, std::move(edges));
  if (g) add(*g, c);
}

GraphSum& GraphSum::operator+=(const GraphSum& other) {
  for (const auto& [g, c] : other.terms_) add_canonical(g, c);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& other) {
  for (const auto& [g, c] : other.terms_) add_canonical(g, -c);
  return *this;
}

GraphSum& GraphSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, coeff] : terms_) coeff *= c;
  return *this;
}

std::optional<std::pair<int, int>> GraphSum::bigrading() const {
  if (terms_.empty()) return std::nullopt;
  std::pair<int, int> first{terms_.begin()->first.vertex_count(), terms_.begin()->first.edge_count()};
  for (const auto& [g, c] : terms_)
    if (g.vertex_count() != first.first || g.edge_count() != first.second) return std::nullopt;
  return first;
}

GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
GraphSum operator*(const Rational& c, GraphSum s) { return s *= c; }
GraphSum sum_add(const GraphSum& a, const GraphSum& b) { return a + b; }
GraphSum sum_scale(const GraphSum& s, const Rational& c) { return c * s; }

// ---------------------------------------------------------------------------
// Statistics

GraphStats graph_stats(const UnorientedGraph& g) {
  GraphStats st;
  st.graph = g;
  const int n = g.vertex_count();
  auto adj = g.adjacency();
  st.valencies = g.degrees();
  std::sort(st.valencies.begin(), st.valencies.end());
  for (int d : st.valencies) ++st.valency_histogram[d];

  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = st.components;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w = 0; w < n; ++w)
        if ((adj[v] >> w & 1u) && comp[w] < 0) {
          comp[w] = st.components;
          q.push(w);
        }
    }
    ++st.components;
  }
  st.connected = st.components <= 1;

  if (st.connected) {
    int diam = 0;
    for (int s = 0; s < n; ++s) {
      std::vector<int> dist(n, -1);
      std::queue<int> q;
      q.push(s);
      dist[s] = 0;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w = 0; w < n; ++w)
          if ((adj[v] >> w & 1u) && dist[w] < 0) {
            dist[w] = dist[v] + 1;
            diam = std::max(diam, dist[w]);
            q.push(w);
          }
      }
    }
    st.diameter = diam;
  }

  // Tarjan low-link for articulation points and bridges.
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> cut(n, false);
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (int w = 0; w < n; ++w) {
      if (!(adj[v] >> w & 1u)) continue;
      if (disc[w] < 0) {
        ++children;
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (parent >= 0 && low[w] >= disc[v]) cut[v] = true;
        if (low[w] > disc[v]) ++st.bridges;
      } else if (w != parent) {
        low[v] = std::min(low[v], disc[w]);
      }
    }
    if (parent < 0 && children > 1) cut[v] = true;
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, -1);
  st.bottlenecks = static_cast<int>(std::count(cut.begin(), cut.end(), true));
  return st;
}

std::vector<GraphStats> graph_stats(const GraphSum& s) {
  std::vector<GraphStats> rows;
  for (const auto& [g, c] : s.terms()) {
    rows.push_back(graph_stats(g));
    rows.back().coefficient = c;
  }
  return rows;
}

std::string format_stats(const std::vector<GraphStats>& rows) {
  std::ostringstream os;
  for (const auto& st : rows) {
    os << "graph: " << format_graph(st.graph) << "\n";
    os << "  coefficient: " << to_string(st.coefficient) << "\n";
    os << "  diameter: " << (st.diameter ? std::to_string(*st.diameter) : std::string("inf")) << "\n";
    os << "  valencies:";
    for (int d : st.valencies) os << ' ' << d;
    os << "\n  valency_histogram:";
    for (auto [d, k] : st.valency_histogram) os << ' ' << d << ':' << k;
    os << "\n  connected: " << (st.connected ? "true" : "false") << "\n";
    os << "  components: " << st.components << "\n";
    os << "  bottlenecks: " << st.bottlenecks << "\n";
    os << "  bridges: " << st.bridges << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Text formats

std::string format_graph(const UnorientedGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count();
  for (const Edge& e : g.edges()) os << ' ' << int(e.lo) << ' ' << int(e.hi);
  return os.str();
}

namespace {

std::vector<long> read_ints(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<long> out;
  std::string tok;
  while (is >> tok) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw InputError("expected integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

UnorientedGraph parse_graph(std::string_view record) {
  auto ints = read_ints(record);
  if (ints.size() < 2) throw InputError("graph record needs header 'n E'");
  long n = ints[0], e = ints[1];
  if (e < 0 || static_cast<long>(ints.size()) != 2 + 2 * e)
    throw InputError("graph record: expected " + std::to_string(e) + " edge pairs");
  std::vector<Edge> edges;
  for (long i = 0; i < e; ++i) {
    long u = ints[2 + 2 * i], v = ints[3 + 2 * i];
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return UnorientedGraph(static_cast<int>(n), std::move(edges));
}

UnorientedGraph parse_edge_list(std::string_view text, std::optional<int> n) {
  std::vector<Edge> edges;
  int max_label = -1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string_view::npos) stop = text.size();
    auto ints = read_ints(text.substr(start, stop - start));
    if (!ints.empty()) {
      if (ints.size() != 2) throw InputError("edge list entries must be 'u v'");
      if (ints[0] < 0 || ints[1] < 0 || ints[0] >= kMaxGraphVertices || ints[1] >= kMaxGraphVertices)
        throw InputError("edge endpoint out of range");
      edges.emplace_back(static_cast<int>(ints[0]), static_cast<int>(ints[1]));
      max_label = std::max<int>(max_label, static_cast<int>(std::max(ints[0], ints[1])));
    }
    start = stop + 1;
  }
  return UnorientedGraph(n.value_or(max_label + 1), std::move(edges));
}

std::string format_graph_sum(const GraphSum& s) {
  std::ostringstream os;
  for (const auto& [g, c] : s.terms()) os << to_string(c) << '\t' << format_graph(g) << '\n';
  return os.str();
}

GraphSum parse_graph_sum(std::string_view text) {
  GraphSum s;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos && boost::algorithm::trim_copy(line) == "0") continue;
    if (tab == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'coeff<TAB>graph'");
    std::string coeff = line.substr(0, tab);
    coeff.erase(0, coeff.find_first_not_of(' '));
    coeff.erase(coeff.find_last_not_of(' ') + 1);
    try {
      s.add(parse_graph(line.substr(tab + 1)), parse_rational(coeff));
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return s;
}

GraphSum read_graph_sum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_sum(ss.str());
}

void write_graph_sum(const std::string& path, const GraphSum& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << format_graph_sum(s);
}

}  // namespace graphflow
