// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "graphflow/graph_complex.hpp"
#include "graphflow/leibniz.hpp"
#include "graphflow/model_io.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace graphflow;
using graphflow::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.ok = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

int sign(int e) { return e % 2 == 0 ? 1 : -1; }

// 1. d o d = 0 on random sums, d(gamma3) = 0
Outcome convention_validation() {
  Outcome o;
  Rng rng(2024);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GraphSum s = graphflow::testing::random_graph_sum(rng, 6, 3);
    if (!differential(differential(s)).empty()) ++failures;
  }
  require(o, failures == 0, std::to_string(failures) + " random sums with d(d(s)) != 0");
  require(o, is_cocycle(gamma3().sum), "d(gamma3) != 0");
  return o;
}

// 2. zero graphs and the (4,6) cell
Outcome zero_graph_calibration() {
  Outcome o;
  require(o, is_zero(cycle_graph(3)), "triangle is not zero");
  require(o, is_zero(path_graph(3)), "3-path is not zero");
  auto cell = enumerate_graphs(4, 6);
  require(o, cell.size() == 1 && cell.front() == complete_graph(4), "enumerate_graphs(4,6) != {K4}");
  require(o, cell == serial::enumerate_graphs_bitmask(4, 6), "bitmask oracle disagrees");
  return o;
}

// 3. gamma3 union gamma3 is closed
Outcome disjoint_union_corollary() {
  Outcome o;
  GraphSum u = disjoint_union(gamma3().sum, gamma3().sum);
  require(o, !u.empty(), "union vanished");
  require(o, differential(u).empty(), "d(gamma3 u gamma3) != 0");
  return o;
}

// 4. Schouten identities on 100 random triples; d_P^2 = 0 at so(3) and Nambu
Outcome schouten_suite() {
  Outcome o;
  Rng rng(99);
  int anti = 0, leibniz = 0, jacobi = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + trial % 3;
    std::uniform_int_distribution<int> deg(0, dim);
    const int a = deg(rng), b = deg(rng), c = deg(rng);
    SuperPoly A = graphflow::testing::random_multivector(rng, dim, a);
    SuperPoly B = graphflow::testing::random_multivector(rng, dim, b);
    SuperPoly C = graphflow::testing::random_multivector(rng, dim, c);
    if (schouten(A, B) != Rational(-sign((a - 1) * (b - 1))) * schouten(B, A)) ++anti;
    if (schouten(A, B * C) != schouten(A, B) * C + Rational(sign((a - 1) * b)) * (B * schouten(A, C))) ++leibniz;
    if (schouten(A, schouten(B, C)) !=
        schouten(schouten(A, B), C) + Rational(sign((a - 1) * (b - 1))) * schouten(B, schouten(A, C)))
      ++jacobi;
  }
  require(o, anti == 0, std::to_string(anti) + " antisymmetry failures");
  require(o, leibniz == 0, std::to_string(leibniz) + " Leibniz failures");
  require(o, jacobi == 0, std::to_string(jacobi) + " Jacobi failures");
  SuperPoly h = SuperPoly::function(3, "h");
  SuperPoly v = SuperPoly::function(3, "v") * SuperPoly::odd(3, 1);
  for (const PoissonModel& m : {linear_bracket(so3_constants(), "so3"), nambu_bivector(abstract_nambu())}) {
    require(o, poisson_differential(m.p, poisson_differential(m.p, h)).is_zero(), "d_P^2 h != 0 at " + m.name);
    require(o, poisson_differential(m.p, poisson_differential(m.p, v)).is_zero(), "d_P^2 v != 0 at " + m.name);
  }
  return o;
}

// 5. Nambu brackets are Poisson
Outcome nambu_lemma() {
  Outcome o;
  require(o, jacobiator(nambu_bivector(abstract_nambu()).p).is_zero(), "jacobiator of the abstract Nambu bivector");
  return o;
}

// 6. evaluate(stick, [P,P]) = c [[P,P]] with one c in r = 2 and r = 3. In
// r = 2 the bracket [[P,P]] vanishes identically, so c is also read off from
// the stick on a (bivector, vector) pair there.
std::optional<Rational> ratio(const SuperPoly& a, const SuperPoly& b) {
  if (b.is_zero()) return std::nullopt;
  Rational r = a.is_zero() ? Rational(0) : Rational(a.terms().front().coeff / b.terms().front().coeff);
  if (a != r * b) return std::nullopt;
  return r;
}

Outcome stick_calibration() {
  Outcome o;
  SuperPoly p3 = abstract_bivector(3);
  auto c = ratio(evaluate(stick(), {p3, p3}), schouten(p3, p3));
  require(o, c.has_value(), "r=3: stick is not proportional to [[P,P]]");
  if (!c) return o;
  require(o, *c != 0, "c = 0");
  SuperPoly p2 = abstract_bivector(2);
  require(o, evaluate(stick(), {p2, p2}) == *c * schouten(p2, p2), "r=2: stick != c [[P,P]]");
  SuperPoly x2 = SuperPoly::function(2, "u") * SuperPoly::odd(2, 0) + SuperPoly::function(2, "w") * SuperPoly::odd(2, 1);
  auto c2 = ratio(evaluate(stick(), {p2, x2}), schouten(p2, x2));
  require(o, c2 && *c2 == *c, "r=2: stick on (P, X) gives a different constant");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("c = ") + to_string(*c);
  return o;
}

// 7. Or(gamma3) vanishes at so(3)
Outcome linear_bracket_vanishing() {
  Outcome o;
  require(o, apply_symmetry(linear_bracket(so3_constants(), "so3"), gamma3()).is_zero(), "Q(so3) != 0");
  return o;
}

// 8. [[P, Or(gamma3)(P)]] = 0 in r = 2; factorization with zero residual in r = 3
Outcome symmetry_property() {
  Outcome o;
  SuperPoly p2 = abstract_bivector(2);
  require(o, schouten(p2, orient_flow(gamma3().sum, p2)).is_zero(), "[[P,Q]] != 0 in r=2");
  SuperPoly p3 = abstract_bivector(3);
  SuperPoly target = schouten(p3, orient_flow(gamma3().sum, p3));
  require(o, !target.is_zero(), "r=3 target vanished");
  Factorization f = leibniz_ansatz_iterate(target, p3);
  require(o, f.residual.is_zero(), "residual has " + std::to_string(f.residual.size()) + " terms");
  require(o, !f.diamond.empty(), "empty diamond");
  require(o, target == expand_leibniz(f.diamond, p3), "expansion of the diamond differs from the target");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(f.diamond.size()) + " Leibniz graphs";
  return o;
}

// 9. scaling flow: P_m = P_0 / m!
Outcome scaling_integration() {
  Outcome o;
  for (const char* name : {"so3", "abstract3"}) {
    PoissonModel m = *builtin_model(name);
    auto coeffs = picard_integrate(m, scaling_flow(), 5);
    Rational fact = 1;
    for (int k = 0; k <= 5; ++k) {
      if (k > 0) fact *= k;
      require(o, coeffs.at(k) == m.p * Rational(1 / fact), std::string(name) + ": P_" + std::to_string(k));
    }
  }
  return o;
}

// 10. trivialization of Q = P at so(3)
Outcome trivialization() {
  Outcome o;
  PoissonModel so3 = linear_bracket(so3_constants(), "so3");
  Trivialization t = trivialize(so3, so3.p, 1);
  require(o, t.found, "no X at D=1");
  SuperPoly euler(3);
  for (int i = 0; i < 3; ++i) euler += SuperPoly::coordinate(3, i) * SuperPoly::odd(3, i);
  const bool proportional = !t.x.is_zero() && t.x.size() == euler.size() &&
                            t.x == euler * Rational(t.x.terms().front().coeff);
  require(o, proportional, "X is not proportional to the Euler field");
  require(o, (so3.p - schouten(so3.p, t.x)).is_zero(), "residual nonzero");
  require(o, !t.gauge.empty(), "empty gauge basis");
  for (const SuperPoly& g : t.gauge) require(o, schouten(so3.p, g).is_zero(), "gauge vector not closed");
  if (proportional) o.detail += (o.detail.empty() ? "" : "; ") + std::string("X = ") + to_string(t.x);
  return o;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// 11. identical CLI output at 1 and 8 threads
Outcome determinism() {
  Outcome o;
  const std::string cli = GRAPHFLOW_CLI;
  const std::string data = GRAPHFLOW_DATA_DIR;
  const std::vector<std::string> commands = {
      "graph canon --edges \"0 1;1 2;0 2\"",
      "graph canon --edges \"0 1;0 2;0 3;1 2;1 3;2 3;3 4\"",
      "graph stats " + data + "/gamma5.gsum",
      "graph enumerate -n 6 -e 9",
      "gc d " + data + "/gamma3.gsum",
      "gc d " + data + "/gamma5.gsum",
      "gc bracket " + data + "/gamma3.gsum " + data + "/gamma3.gsum",
      "gc cocycle-check " + data + "/gamma3.gsum",
      "gc union " + data + "/gamma3.gsum " + data + "/gamma3.gsum",
      "gc cohomology -n 6 -e 10",
      "or eval --edges \"0 1;1 2;0 2;2 3\" --model abstract3",
      "or eval --leibniz \"2 3 J 1 s0 s1 P 0 s2\" --model abstract3",
      "or flow --model abstract3",
      "or flow --model nambu",
      "or factorize --dim 2",
      "lab nambu --a \"x1^2*x2 + x3^3\" --rho \"1 + x1\"",
      "lab linear --constants so3",
      "lab apply --model so3 --cocycle gamma3",
      "lab apply --model nambu-cubic",
      "lab integrate --model abstract2 -k 2",
      "lab invariance --model nambu-quartic-density",
      "lab trivialize --model so3 --cocycle scaling",
      "lab trivialize --model nambu-cubic -D 4",
      "lab lift --cocycle scaling",
  };
  int mismatches = 0;
  for (const auto& c : commands) {
    Run one = run(cli + " --threads 1 " + c);
    Run eight = run(cli + " --threads 8 " + c);
    if (one.status < 0 || one.status != eight.status || one.out != eight.out || one.out.empty()) {
      ++mismatches;
      require(o, false, "differs: " + c);
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(commands.size() - mismatches) + "/" +
              std::to_string(commands.size()) + " commands identical";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "convention validation: d^2 = 0 on 200 random sums, d(gamma3) = 0", 30, convention_validation},
      {2, "zero-graph calibration and the (4,6) cell", 5, zero_graph_calibration},
      {3, "disjoint-union corollary: d(gamma3 u gamma3) = 0", 60, disjoint_union_corollary},
      {4, "Schouten suite and d_P^2 = 0", 60, schouten_suite},
      {5, "Nambu brackets are Poisson", 120, nambu_lemma},
      {6, "stick calibration across r = 2, 3", 30, stick_calibration},
      {7, "linear-bracket vanishing of the tetrahedral flow", 120, linear_bracket_vanishing},
      {8, "symmetry property and Leibniz factorization", 600, symmetry_property},
      {9, "scaling-flow integration: P_m = P_0 / m!", 5, scaling_integration},
      {10, "trivialization of Q = P at so(3)", 30, trivialization},
      {11, "CLI determinism across thread counts", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      std::ostringstream os;
      os << "runtime above " << c.limit_seconds << " s";
      o.detail += (o.detail.empty() ? "" : "; ") + os.str();
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
