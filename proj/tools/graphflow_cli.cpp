#include "graphflow/cancel.hpp"
#include "graphflow/errors.hpp"
#include "graphflow/expression.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/graph_complex.hpp"
#include "graphflow/leibniz.hpp"
#include "graphflow/model_io.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/parallel.hpp"
#include "graphflow/poisson_lab.hpp"
#include "graphflow/schouten.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace graphflow;

namespace {

enum Exit { kOk = 0, kInput = 2, kResource = 3, kNoSolution = 4, kCancelled = 130 };

extern "C" void on_interrupt(int) { request_cancel(); }

struct Options {
  int threads = 0;
  std::string data;
  std::string output;
};

// Writes to --output when given, else stdout.
void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw InputError("cannot write '" + o.output + "'");
  out << text;
}

std::string data_dir(const Options& o) { return o.data.empty() ? default_data_dir() : o.data; }

std::string line(const std::string& s) { return s + "\n"; }

std::string sum_text(const GraphSum& s) { return s.empty() ? "0\n" : format_graph_sum(s); }

// A graph from --edges (with optional --vertices) or a record `n E u v ...`.
UnorientedGraph graph_arg(const std::string& edges, const std::string& record, int vertices) {
  if (!edges.empty() && !record.empty()) throw InputError("give either --edges or --graph");
  if (!record.empty()) return parse_graph(record);
  if (edges.empty()) throw InputError("a graph is required (--edges or --graph)");
  return parse_edge_list(edges, vertices > 0 ? std::optional<int>(vertices) : std::nullopt);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Command {
  CLI::App* app;
  std::function<int()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the Kontsevich graph calculus"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--threads", opt.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--data", opt.data, "Cocycle library directory (default: $GRAPHFLOW_DATA or the bundled data)");
  app.add_option("-o,--output", opt.output, "Write the result to this file instead of stdout");

  std::vector<Command> commands;
  auto add = [&](CLI::App* group, const std::string& name, const std::string& help) {
    CLI::App* sub = group->add_subcommand(name, help);
    commands.push_back({sub, {}});
    return std::pair{sub, &commands.back().run};
  };
  commands.reserve(32);

  // graph --------------------------------------------------------------------
  CLI::App* graph = app.add_subcommand("graph", "Single graphs: canonical form, statistics, enumeration");
  graph->require_subcommand(1);
  std::string edges, record, file, file2, cocycle = "gamma3", model_name, expr_a, expr_rho, constants;
  int vertices = 0, edge_count = -1, dim = 3, rounds = 8, order = kDefaultPicardOrder, degree = 1,
      jet_order = kDefaultLiftJetOrder;
  std::vector<std::string> files;

  {
    auto [c, run] = add(graph, "canon", "Canonical form and sign; prints ZERO for zero graphs");
    c->add_option("--edges", edges, "Edge list, e.g. \"0 1;1 2\"");
    c->add_option("--graph", record, "Graph record \"n E u v ...\"");
    c->add_option("--vertices", vertices, "Vertex count (default: largest label + 1)");
    *run = [&] {
      CanonicalForm f = canonical_form(graph_arg(edges, record, vertices));
      if (f.sign == 0) {
        emit(opt, "ZERO\n");
        return kOk;
      }
      emit(opt, line(format_graph(f.graph)) + "sign: " + (f.sign > 0 ? "+1" : "-1") + "\n");
      return kOk;
    };
  }
  {
    auto [c, run] = add(graph, "stats", "Diameter, valencies, connectivity, cut vertices");
    c->add_option("file", file, "GraphSum file");
    c->add_option("--edges", edges, "Edge list");
    c->add_option("--graph", record, "Graph record");
    c->add_option("--vertices", vertices, "Vertex count");
    *run = [&] {
      if (!file.empty()) {
        emit(opt, format_stats(graph_stats(read_graph_sum(file))));
        return kOk;
      }
      emit(opt, format_stats({graph_stats(graph_arg(edges, record, vertices))}));
      return kOk;
    };
  }
  {
    auto [c, run] = add(graph, "enumerate", "Nonzero canonical graphs with n vertices and E edges");
    c->add_option("-n,--vertices", vertices, "Vertex count")->required();
    c->add_option("-e,--edges", edge_count, "Edge count")->required();
    *run = [&] {
      GraphSum all;
      for (const UnorientedGraph& g : enumerate_graphs(vertices, edge_count)) all.add_canonical(g, 1);
      emit(opt, all.empty() ? std::string("0\n") : format_graph_sum(all));
      return kOk;
    };
  }

  // gc -----------------------------------------------------------------------
  CLI::App* gc = app.add_subcommand("gc", "The graph complex: differential, bracket, cocycles");
  gc->require_subcommand(1);
  {
    auto [c, run] = add(gc, "d", "Differential d = [stick, .] of a GraphSum file");
    c->add_option("file", file, "GraphSum file")->required();
    *run = [&] {
      emit(opt, sum_text(differential(read_graph_sum(file))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(gc, "bracket", "Lie bracket of two GraphSum files");
    c->add_option("a", file, "GraphSum file")->required();
    c->add_option("b", file2, "GraphSum file")->required();
    *run = [&] {
      emit(opt, sum_text(lie_bracket(read_graph_sum(file), read_graph_sum(file2))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(gc, "cocycle-check", "Checks d(sum) = 0");
    c->add_option("file", file, "GraphSum file")->required();
    *run = [&] {
      emit(opt, std::string("cocycle: ") + (is_cocycle(read_graph_sum(file)) ? "true" : "false") + "\n");
      return kOk;
    };
  }
  {
    auto [c, run] = add(gc, "union", "Disjoint union (wedge product) of two GraphSum files");
    c->add_option("a", file, "GraphSum file")->required();
    c->add_option("b", file2, "GraphSum file")->required();
    *run = [&] {
      emit(opt, sum_text(disjoint_union(read_graph_sum(file), read_graph_sum(file2))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(gc, "enumerate", "Nonzero canonical graphs with n vertices and E edges");
    c->add_option("n", vertices, "Vertex count")->required();
    c->add_option("E", edge_count, "Edge count")->required();
    *run = [&] {
      GraphSum all;
      for (const UnorientedGraph& g : enumerate_graphs(vertices, edge_count)) all.add_canonical(g, 1);
      emit(opt, all.empty() ? std::string("0\n") : format_graph_sum(all));
      return kOk;
    };
  }
  {
    auto [c, run] = add(gc, "cohomology", "Cocycle space of the (n, E) cell and its nontrivial classes");
    c->add_option("-n,--vertices", vertices, "Vertex count")->required();
    c->add_option("-e,--edges", edge_count, "Edge count")->required();
    *run = [&] {
      std::ostringstream os;
      os << "graphs: " << enumerate_graphs(vertices, edge_count).size() << "\n";
      os << "cocycles: " << cocycle_basis(vertices, edge_count).size() << "\n";
      auto classes = nontrivial_cocycles(vertices, edge_count);
      os << "cohomology: " << classes.size() << "\n";
      for (std::size_t k = 0; k < classes.size(); ++k) os << "# class " << k + 1 << "\n" << format_graph_sum(classes[k]);
      emit(opt, os.str());
      return kOk;
    };
  }

  // or -----------------------------------------------------------------------
  CLI::App* orc = app.add_subcommand("or", "Orientation: evaluation, flows, Leibniz factorization");
  orc->require_subcommand(1);
  {
    auto [c, run] = add(orc, "eval", "Evaluates a graph (every vertex P) or a Leibniz graph at a model");
    c->add_option("--edges", edges, "Edge list");
    c->add_option("--graph", record, "Graph record");
    c->add_option("--vertices", vertices, "Vertex count");
    c->add_option("--leibniz", file, "Leibniz record \"n k J t t t P t t ...\"");
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    *run = [&] {
      PoissonModel m = load_model(model_name);
      if (!file.empty()) {
        emit(opt, line(to_string(expand_leibniz(parse_leibniz(file), m.p))));
        return kOk;
      }
      UnorientedGraph g = graph_arg(edges, record, vertices);
      emit(opt, line(to_string(evaluate(g, VertexContent(g.vertex_count(), m.p)))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(orc, "flow", "Or(gamma)(P) for a cocycle name or GraphSum file");
    c->add_option("--cocycle", cocycle, "Cocycle name or GraphSum file")->capture_default_str();
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    *run = [&] {
      CocycleRecord g = find_cocycle(cocycle, data_dir(opt));
      emit(opt, line(to_string(orient_flow(g.sum, load_model(model_name).p))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(orc, "factorize", "Solves [[P, Or(gamma)(P)]] = diamond(P, [[P,P]]) for abstract P");
    c->add_option("--cocycle", cocycle, "Cocycle name or GraphSum file")->capture_default_str();
    c->add_option("--dim", dim, "Dimension of the abstract bivector")->capture_default_str()->check(CLI::Range(2, 4));
    c->add_option("--rounds", rounds, "Maximal ansatz rounds")->capture_default_str()->check(CLI::Range(1, 32));
    *run = [&] {
      CocycleRecord g = find_cocycle(cocycle, data_dir(opt));
      SuperPoly p = abstract_bivector(dim);
      SuperPoly target = schouten(p, orient_flow(g.sum, p));
      Factorization f = leibniz_ansatz_iterate(target, p, rounds);
      std::cerr << format_factorization(f);
      emit(opt, f.diamond.empty() ? std::string("0\n") : format_leibniz_sum(f.diamond));
      return f.residual.is_zero() ? kOk : kNoSolution;
    };
  }
  {
    auto [c, run] = add(orc, "metagraph", "Adjacency of Leibniz graphs across factorization files");
    c->add_option("files", files, "Leibniz sum files")->required();
    *run = [&] {
      std::vector<LeibnizSum> sols;
      for (const auto& f : files) sols.push_back(parse_leibniz_sum(read_text(f)));
      emit(opt, format_metagraph(leibniz_metagraph(sols)));
      return kOk;
    };
  }

  // lab ----------------------------------------------------------------------
  CLI::App* lab = app.add_subcommand("lab", "Concrete Poisson models and their flows");
  lab->require_subcommand(1);
  {
    auto [c, run] = add(lab, "nambu", "Nambu bivector rho * eps^{ijk} da/dx^k");
    c->add_option("--a", expr_a, "Expression for a (default: abstract symbol a)");
    c->add_option("--rho", expr_rho, "Expression for rho (default: abstract symbol rho)");
    *run = [&] {
      SymbolTable t;
      t.dim = 3;
      t.undeclared = SymbolTable::Undeclared::AsFunction;
      NambuDatum d = abstract_nambu();
      if (!expr_a.empty()) d.a = parse_superpoly(expr_a, t);
      if (!expr_rho.empty()) d.rho = parse_superpoly(expr_rho, t);
      PoissonModel m = nambu_bivector(d);
      std::cerr << "jacobiator: " << to_string(m.jacobi_residual()) << "\n";
      emit(opt, format_model(m));
      return kOk;
    };
  }
  {
    auto [c, run] = add(lab, "linear", "Linear bracket P^{ij} = c^{ij}_k x^k");
    c->add_option("--dim", dim, "Dimension")->capture_default_str();
    c->add_option("--constants", constants, "Entries \"i j k c; ...\" (1-based), or 'so3'")->required();
    *run = [&] {
      StructureConstants sc = constants == "so3" ? so3_constants() : parse_structure_constants(constants, dim);
      PoissonModel m = linear_bracket(sc);
      std::cerr << "jacobiator: " << to_string(m.jacobi_residual()) << "\n";
      emit(opt, format_model(m));
      return kOk;
    };
  }
  {
    auto [c, run] = add(lab, "apply", "Q = Or(gamma)(P) at a model");
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    c->add_option("--cocycle", cocycle, "Cocycle name or GraphSum file")->capture_default_str();
    *run = [&] {
      emit(opt, line(to_string(apply_symmetry(load_model(model_name), find_cocycle(cocycle, data_dir(opt))))));
      return kOk;
    };
  }
  {
    auto [c, run] = add(lab, "integrate", "Formal solution P(e) of dP/de = Q(P) up to e^k");
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    c->add_option("--cocycle", cocycle, "Cocycle name, GraphSum file, or 'scaling'")->capture_default_str();
    c->add_option("-k,--order", order, "Truncation order")->capture_default_str();
    *run = [&] {
      auto coeffs = picard_integrate(load_model(model_name), find_cocycle(cocycle, data_dir(opt)), order);
      emit(opt, format_picard(coeffs));
      return kOk;
    };
  }
  {
    auto [c, run] = add(lab, "invariance", "Parameter conditions for Q(P) = 0 on a model family");
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    c->add_option("--cocycle", cocycle, "Cocycle name or GraphSum file")->capture_default_str();
    *run = [&] {
      auto conds = invariance_conditions(load_model(model_name), find_cocycle(cocycle, data_dir(opt)));
      std::ostringstream os;
      os << "conditions: " << conds.size() << "\n";
      for (const auto& c : conds) os << to_string(c) << " = 0\n";
      emit(opt, os.str());
      return kOk;
    };
  }
  {
    auto [c, run] = add(lab, "trivialize", "Searches X with Q = [[P,X]] among polynomial vector fields");
    c->add_option("--model", model_name, "Built-in model name or model file")->required();
    c->add_option("--cocycle", cocycle, "Cocycle name, GraphSum file, or 'scaling'")->capture_default_str();
    c->add_option("-D,--degree", degree, "Coefficient degree bound")->capture_default_str();
    *run = [&] {
      PoissonModel m = load_model(model_name);
      Trivialization t = trivialize(m, apply_symmetry(m, find_cocycle(cocycle, data_dir(opt))), degree);
      emit(opt, format_trivialization(t));
      return t.found ? kOk : kNoSolution;
    };
  }
  {
    auto [c, run] = add(lab, "lift", "Searches an evolution of (a, rho) inducing Q on abstract Nambu brackets");
    c->add_option("--cocycle", cocycle, "Cocycle name, GraphSum file, or 'scaling'")->capture_default_str();
    c->add_option("--jet-order", jet_order, "Maximal jet order in the ansatz")->capture_default_str();
    *run = [&] {
      PoissonModel m = nambu_bivector(abstract_nambu());
      NambuLift l = nambu_lift_conditions(apply_symmetry(m, find_cocycle(cocycle, data_dir(opt))), jet_order);
      emit(opt, format_lift(l));
      return l.solvable ? kOk : kNoSolution;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  set_threads(opt.threads);
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  try {
    for (auto& c : commands)
      if (c.app->parsed()) return c.run();
    return kInput;
  } catch (const Cancelled&) {
    std::cerr << "cancelled\n";
    return kCancelled;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
