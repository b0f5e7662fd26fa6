#include "graphflow/errors.hpp"
#include "graphflow/graph_complex.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace graphflow {

CocycleRecord gamma3() {
  return {"gamma3", GraphSum(complete_graph(4)), {4, 6}, "Kontsevich tetrahedron K4, coefficient 1", false};
}

CocycleRecord scaling_flow() {
  return {"scaling", GraphSum(single_vertex()), {1, 0}, "one vertex, no edges; orients to Q(P) = P", true};
}

void validate(const CocycleRecord& r) {
  for (const auto& [g, c] : r.sum.terms())
    if (g.vertex_count() != r.bigrading.first || g.edge_count() != r.bigrading.second)
      throw InputError("cocycle '" + r.name + "': term " + format_graph(g) + " does not match bigrading (" +
                       std::to_string(r.bigrading.first) + "," + std::to_string(r.bigrading.second) + ")");
  if (!r.pseudo && !is_cocycle(r.sum)) throw InputError("cocycle '" + r.name + "' fails d(sum) = 0");
}

std::vector<CocycleRecord> load_cocycle_library(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path manifest = fs::path(dir) / "manifest.tsv";
  std::ifstream in(manifest);
  if (!in) throw InputError("cannot open cocycle manifest '" + manifest.string() + "'");
  std::vector<CocycleRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() < 4) throw InputError("manifest line needs name, file, n, E: '" + line + "'");
    CocycleRecord r;
    r.name = fields[0];
    r.sum = read_graph_sum((fs::path(dir) / fields[1]).string());
    r.bigrading = {std::stoi(fields[2]), std::stoi(fields[3])};
    r.provenance = fields.size() > 4 ? fields[4] : "";
    validate(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("GRAPHFLOW_DATA"); env && *env) return env;
  return GRAPHFLOW_DEFAULT_DATA;
}

CocycleRecord find_cocycle(const std::string& name, const std::string& data_dir) {
  if (name == "gamma3") return gamma3();
  if (name == "scaling") return scaling_flow();
  namespace fs = std::filesystem;
  if (fs::exists(fs::path(data_dir) / "manifest.tsv")) {
    std::ifstream in(fs::path(data_dir) / "manifest.tsv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind(name + "\t", 0) != 0) continue;
      for (auto& r : load_cocycle_library(data_dir))
        if (r.name == name) return r;
    }
  }
  if (fs::is_regular_file(name)) {
    CocycleRecord r;
    r.name = fs::path(name).stem().string();
    r.sum = read_graph_sum(name);
    auto bg = r.sum.bigrading();
    if (!bg) throw InputError("'" + name + "' is empty or not homogeneous");
    r.bigrading = *bg;
    r.provenance = name;
    validate(r);
    return r;
  }
  throw InputError("unknown cocycle '" + name + "'");
}

}  // namespace graphflow
