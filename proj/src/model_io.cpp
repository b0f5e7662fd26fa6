#include "graphflow/model_io.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/expression.hpp"

#include <boost/algorithm/string.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace graphflow {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

// "P12" -> (0, 1)
std::optional<std::pair<int, int>> pair_key(const std::string& key) {
  if (key.size() != 3 || key[0] != 'P' || !std::isdigit(static_cast<unsigned char>(key[1])) ||
      !std::isdigit(static_cast<unsigned char>(key[2])))
    return std::nullopt;
  return std::pair{key[1] - '1', key[2] - '1'};
}

void collect_functions(const SuperPoly& p, std::set<std::string>& out) {
  for (const auto& t : p.terms())
    for (const Factor& f : t.mono.factors())
      if (f.atom.kind() == Atom::Kind::Jet) out.insert(symbol_name(f.atom.index()));
}

std::string join(const std::vector<std::string>& v) { return boost::join(v, ", "); }

}  // namespace

PoissonModel parse_model(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> fields;  // key -> (value, line)
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("model line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = boost::trim_copy(line.substr(0, colon));
    std::string value = boost::trim_copy(line.substr(colon + 1));
    if (!fields.emplace(key, std::pair{value, lineno}).second)
      throw InputError("model line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string v = it->second.first;
    fields.erase(it);
    return v;
  };

  PoissonModel m;
  m.name = take("name").value_or("model");
  auto dim_text = take("dim");
  if (!dim_text) throw InputError("model: missing 'dim'");
  try {
    m.dim = std::stoi(*dim_text);
  } catch (const std::exception&) {
    throw InputError("model: 'dim' must be an integer");
  }
  if (m.dim < 1 || m.dim > kMaxDimension) throw InputError("model: dim must lie in 1.." + std::to_string(kMaxDimension));

  SymbolTable table;
  table.dim = m.dim;
  if (auto p = take("parameters")) {
    m.parameters = split_list(*p);
    table.parameters.insert(m.parameters.begin(), m.parameters.end());
  }
  if (auto f = take("functions")) {
    for (auto& name : split_list(*f)) table.functions.insert(name);
  }

  auto expr = [&](const std::string& key, const std::string& value) {
    try {
      return parse_superpoly(value, table);
    } catch (const InputError& e) {
      throw InputError("model key '" + key + "': " + e.what());
    }
  };

  auto a = take("a");
  auto rho = take("rho");
  if (a || rho) {
    if (m.dim != 3) throw InputError("model: Nambu data require dim 3");
    NambuDatum d{a ? expr("a", *a) : SuperPoly(3), rho ? expr("rho", *rho) : SuperPoly::constant(3, 1)};
    PoissonModel n = nambu_bivector(d, m.name);
    n.parameters = m.parameters;
    m = std::move(n);
  } else {
    m.p = SuperPoly(m.dim);
    for (int i = 0; i < m.dim; ++i)
      for (int j = i + 1; j < m.dim; ++j) {
        std::string key = "P" + std::to_string(i + 1) + std::to_string(j + 1);
        if (auto v = take(key)) m.p += expr(key, *v) * SuperPoly::odd(m.dim, i) * SuperPoly::odd(m.dim, j);
      }
  }
  if (!fields.empty()) {
    const auto& [key, val] = *fields.begin();
    if (pair_key(key)) throw InputError("model line " + std::to_string(val.second) + ": '" + key + "' needs i < j <= dim");
    throw InputError("model line " + std::to_string(val.second) + ": unknown key '" + key + "'");
  }
  if (!m.p.is_zero() && m.p.odd_degree() != 2) throw InputError("model: coefficients must not contain odd variables");
  return m;
}

std::string format_model(const PoissonModel& m) {
  std::ostringstream os;
  os << "name: " << m.name << "\n";
  os << "dim: " << m.dim << "\n";
  if (!m.parameters.empty()) os << "parameters: " << join(m.parameters) << "\n";
  std::set<std::string> functions;
  if (m.nambu) {
    collect_functions(m.nambu->a, functions);
    collect_functions(m.nambu->rho, functions);
  } else {
    collect_functions(m.p, functions);
  }
  if (!functions.empty()) os << "functions: " << join({functions.begin(), functions.end()}) << "\n";
  if (m.nambu) {
    os << "a: " << to_string(m.nambu->a) << "\n";
    os << "rho: " << to_string(m.nambu->rho) << "\n";
    return os.str();
  }
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j) {
      SuperPoly c = m.p.coefficient((1u << i) | (1u << j));
      if (!c.is_zero()) os << "P" << i + 1 << j + 1 << ": " << to_string(c) << "\n";
    }
  return os.str();
}

PoissonModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void write_model(const std::string& path, const PoissonModel& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << format_model(m);
}

std::vector<std::string> builtin_model_names() {
  return {"so3", "so3-scaled", "linear3", "broken", "abstract2", "abstract3", "nambu", "nambu-cubic",
          "nambu-quartic-family", "nambu-quartic-density"};
}

std::optional<PoissonModel> builtin_model(const std::string& name) {
  if (name == "so3") return linear_bracket(so3_constants(), "so3");
  if (name == "so3-scaled") {
    PoissonModel m = linear_bracket(so3_constants(), "so3-scaled");
    m.p = m.p * SuperPoly::parameter(3, "t");
    m.parameters = {"t"};
    return m;
  }
  if (name == "linear3") {
    // P^{ij} = sum_k c<ij>_<k> x^k with all nine constants unknown
    PoissonModel m;
    m.name = "linear3";
    m.dim = 3;
    m.p = SuperPoly(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        SuperPoly c(3);
        for (int k = 0; k < 3; ++k) {
          std::string s = "c" + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(k + 1);
          m.parameters.push_back(s);
          c += SuperPoly::parameter(3, s) * SuperPoly::coordinate(3, k);
        }
        m.p += c * SuperPoly::odd(3, i) * SuperPoly::odd(3, j);
      }
    return m;
  }
  if (name == "broken") {
    // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 violates the Jacobi identity
    StructureConstants c = so3_constants();
    c[0][2] = {1, 0, 0};
    c[2][0] = {-1, 0, 0};
    return linear_bracket(c, "broken");
  }
  if (name == "abstract2" || name == "abstract3") {
    PoissonModel m;
    m.name = name;
    m.dim = name == "abstract2" ? 2 : 3;
    m.p = abstract_bivector(m.dim);
    return m;
  }
  SymbolTable table;
  table.dim = 3;
  table.parameters = {"t"};
  if (name == "nambu") return nambu_bivector(abstract_nambu(), "nambu");
  if (name == "nambu-cubic")
    return nambu_bivector({parse_superpoly("x1^2*x2 + x2*x3^2 + x3^3", table), parse_superpoly("1 + x1", table)},
                          "nambu-cubic");
  if (name == "nambu-quartic-family") {
    PoissonModel m = nambu_bivector(
        {parse_superpoly("(x1^2 + x2^2 + x3^2)/2 + t*x1^4", table), SuperPoly::constant(3, 1)}, name);
    m.parameters = {"t"};
    return m;
  }
  if (name == "nambu-quartic-density") {
    PoissonModel m = nambu_bivector(
        {parse_superpoly("(x1^2 + x2^2 + x3^2)/2 + t*x1^4", table), parse_superpoly("1 + x2", table)}, name);
    m.parameters = {"t"};
    return m;
  }
  return std::nullopt;
}

PoissonModel load_model(const std::string& name_or_path) {
  if (auto m = builtin_model(name_or_path)) return *m;
  if (std::filesystem::exists(name_or_path)) return read_model(name_or_path);
  throw InputError("unknown model '" + name_or_path + "' (built-ins: " + join(builtin_model_names()) + ")");
}

StructureConstants parse_structure_constants(std::string_view text, int dim) {
  if (dim < 1 || dim > kMaxDimension) throw InputError("dimension out of range");
  StructureConstants c(dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim)));
  std::vector<std::string> entries;
  boost::split(entries, text, boost::is_any_of(";"));
  for (auto& e : entries) {
    boost::trim(e);
    if (e.empty()) continue;
    std::istringstream in(e);
    int i = 0, j = 0, k = 0;
    std::string value;
    if (!(in >> i >> j >> k >> value)) throw InputError("structure constant entry '" + e + "': expected 'i j k c'");
    if (i < 1 || j < 1 || k < 1 || i > dim || j > dim || k > dim)
      throw InputError("structure constant entry '" + e + "': index out of range");
    if (i == j) throw InputError("structure constant entry '" + e + "': i and j must differ");
    Rational v = parse_rational(value);
    c[i - 1][j - 1][k - 1] = v;
    c[j - 1][i - 1][k - 1] = -v;
  }
  return c;
}

}  // namespace graphflow
