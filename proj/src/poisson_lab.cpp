#include "graphflow/poisson_lab.hpp"

#include "graphflow/cancel.hpp"
#include "graphflow/errors.hpp"
#include "graphflow/linalg.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/schouten.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace graphflow {

SuperPoly PoissonModel::jacobi_residual() const { return jacobiator(p); }

namespace {

// xi_i xi_j with i < j (0-based).
SuperPoly odd_pair(int dim, int i, int j) { return SuperPoly::odd(dim, i) * SuperPoly::odd(dim, j); }

void require_bivector(const SuperPoly& p) {
  if (!p.is_zero() && p.odd_degree() != 2) throw InputError("model bivector must be homogeneous of degree 2");
}

}  // namespace

NambuDatum abstract_nambu() { return {SuperPoly::function(3, "a"), SuperPoly::function(3, "rho")}; }

PoissonModel nambu_bivector(const NambuDatum& d, std::string name) {
  if (d.a.dim() != 3 || d.rho.dim() != 3) throw InputError("Nambu data live in dimension 3");
  PoissonModel m;
  m.name = std::move(name);
  m.dim = 3;
  m.nambu = d;
  const SuperPoly p12 = d.rho * d.a.derivative_x(2);
  const SuperPoly p23 = d.rho * d.a.derivative_x(0);
  const SuperPoly p13 = -(d.rho * d.a.derivative_x(1));
  m.p = p12 * odd_pair(3, 0, 1) + p13 * odd_pair(3, 0, 2) + p23 * odd_pair(3, 1, 2);
  return m;
}

PoissonModel linear_bracket(const StructureConstants& c, std::string name) {
  const int dim = static_cast<int>(c.size());
  if (dim < 1 || dim > kMaxDimension) throw InputError("structure constants: dimension out of range");
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(c[i].size()) != dim) throw InputError("structure constants must be r x r x r");
    for (int j = 0; j < dim; ++j)
      if (static_cast<int>(c[i][j].size()) != dim) throw InputError("structure constants must be r x r x r");
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (c[i][j][k] != -c[j][i][k]) throw InputError("structure constants are not antisymmetric in i, j");
  PoissonModel m;
  m.name = std::move(name);
  m.dim = dim;
  m.p = SuperPoly(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      SuperPoly coeff(dim);
      for (int k = 0; k < dim; ++k)
        if (c[i][j][k] != 0) coeff += c[i][j][k] * SuperPoly::coordinate(dim, k);
      m.p += coeff * odd_pair(dim, i, j);
    }
  return m;
}

StructureConstants so3_constants() {
  StructureConstants c(3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
  // [e_i, e_j] = eps_ijk e_k
  auto set = [&](int i, int j, int k) {
    c[i][j][k] = 1;
    c[j][i][k] = -1;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  return c;
}

SuperPoly apply_symmetry(const PoissonModel& model, const CocycleRecord& gamma) {
  require_bivector(model.p);
  if (!gamma.pseudo && !is_cocycle(gamma.sum)) throw InputError("'" + gamma.name + "' is not a graph cocycle");
  SuperPoly q = orient_flow(gamma.sum, model.p);
  return q.is_zero() ? SuperPoly(model.dim) : q;
}

std::vector<SuperPoly> picard_integrate(const PoissonModel& model, const CocycleRecord& gamma, int order) {
  if (order < 0) throw InputError("integration order must be nonnegative");
  if (order > kMaxPicardOrder) throw ResourceError("integration order above " + std::to_string(kMaxPicardOrder));
  require_bivector(model.p);
  if (!gamma.pseudo && !is_cocycle(gamma.sum)) throw InputError("'" + gamma.name + "' is not a graph cocycle");
  std::vector<SuperPoly> coeffs{model.p};
  if (gamma.sum.empty()) {
    coeffs.resize(order + 1, SuperPoly(model.dim));
    return coeffs;
  }
  auto grading = gamma.sum.bigrading();
  if (!grading) throw InputError("cocycle terms must share vertex and edge counts");
  const int n = grading->first;

  for (int m = 0; m < order; ++m) {
    SuperPolyBuilder acc(model.dim);
    std::vector<int> parts(n, 0);
    VertexContent contents(n);
    // compositions of m into n nonnegative parts
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == n - 1) {
        parts[slot] = left;
        for (int v = 0; v < n; ++v) {
          if (coeffs[parts[v]].is_zero()) return;
          contents[v] = coeffs[parts[v]];
        }
        check_cancel();
        for (const auto& [g, c] : gamma.sum.terms()) acc.add(evaluate(g, contents), c);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        parts[slot] = k;
        rec(slot + 1, left - k);
      }
    };
    rec(0, m);
    coeffs.push_back(acc.finish() * Rational(1, m + 1));
  }
  return coeffs;
}

namespace {

bool is_parameter_factor(const Factor& f) { return f.atom.kind() == Atom::Kind::Parameter; }

}  // namespace

std::vector<SuperPoly> invariance_conditions(const PoissonModel& family, const CocycleRecord& gamma) {
  const SuperPoly q = apply_symmetry(family, gamma);
  std::map<std::pair<std::uint32_t, Monomial>, std::vector<SuperPoly::Term>> groups;
  for (const auto& t : q.terms()) {
    Monomial rest;
    Monomial params;
    for (const Factor& f : t.mono.factors()) {
      if (is_parameter_factor(f))
        params = params.times(f.atom, f.exponent);
      else
        rest = rest.times(f.atom, f.exponent);
    }
    groups[{t.odd, rest}].push_back({0, params, t.coeff});
  }
  std::map<std::string, SuperPoly> unique;
  for (auto& [key, terms] : groups) {
    SuperPoly c = SuperPoly::from_terms(family.dim, std::move(terms));
    if (c.is_zero()) continue;
    c *= Rational(1 / c.terms().front().coeff);
    unique.emplace(to_string(c), std::move(c));
  }
  std::vector<SuperPoly> out;
  for (auto& [text, c] : unique) out.push_back(std::move(c));
  return out;
}

PoissonModel specialize(const PoissonModel& family, const std::map<std::string, Rational>& values) {
  std::map<std::string, SuperPoly> bindings;
  for (const auto& [name, v] : values) {
    if (std::find(family.parameters.begin(), family.parameters.end(), name) == family.parameters.end())
      throw InputError("'" + name + "' is not a parameter of model '" + family.name + "'");
    bindings.emplace(name, SuperPoly::constant(family.dim, v));
  }
  PoissonModel out = family;
  out.p = substitute(family.p, bindings);
  if (out.p.is_zero()) out.p = SuperPoly(family.dim);
  std::erase_if(out.parameters, [&](const std::string& s) { return values.count(s) != 0; });
  if (out.nambu) {
    out.nambu->a = substitute(out.nambu->a, bindings);
    out.nambu->rho = substitute(out.nambu->rho, bindings);
  }
  return out;
}

namespace {

// Monomials in x of degree <= d, ascending degree then ascending exponent
// tuples read from x1.
std::vector<Monomial> coordinate_monomials(int dim, int max_degree) {
  std::vector<Monomial> out;
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::vector<int> e(dim, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == dim - 1) {
        e[i] = left;
        Monomial m;
        for (int k = 0; k < dim; ++k)
          if (e[k] > 0) m = m.times(Atom::coordinate(k), static_cast<std::uint32_t>(e[k]));
        out.push_back(m);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, deg);
  }
  return out;
}

SuperPoly monomial_poly(int dim, const Monomial& m) {
  return SuperPoly::from_terms(dim, {{0, m, Rational(1)}});
}

class RowIndex {
 public:
  int operator()(std::uint32_t odd, const Monomial& m) {
    auto [it, inserted] = rows_.try_emplace({odd, m}, static_cast<int>(rows_.size()));
    return it->second;
  }
  int size() const { return static_cast<int>(rows_.size()); }

 private:
  std::map<std::pair<std::uint32_t, Monomial>, int> rows_;
};

SparseVector to_vector(const SuperPoly& p, RowIndex& rows) {
  SparseVector v;
  for (const auto& t : p.terms()) v[rows(t.odd, t.mono)] += t.coeff;
  return v;
}

// Columns evaluated in parallel; rows numbered afterwards in column order.
std::vector<SparseVector> assemble(const std::vector<SuperPoly>& images, RowIndex& rows) {
  std::vector<SparseVector> cols;
  cols.reserve(images.size());
  for (const SuperPoly& img : images) cols.push_back(to_vector(img, rows));
  return cols;
}

SuperPoly combine(int dim, const std::vector<SuperPoly>& basis, const SparseVector& x) {
  SuperPolyBuilder b(dim);
  for (const auto& [j, c] : x) b.add(basis[j], c);
  SuperPoly out = b.finish();
  return out.is_zero() ? SuperPoly(dim) : out;
}

}  // namespace

Trivialization trivialize(const PoissonModel& model, const SuperPoly& q, int degree) {
  if (degree < 0) throw InputError("ansatz degree must be nonnegative");
  if (degree > kMaxTrivializeDegree) throw ResourceError("ansatz degree above " + std::to_string(kMaxTrivializeDegree));
  require_bivector(model.p);
  if (!q.is_zero() && q.odd_degree() != 2) throw InputError("Q must be a bivector");
  const int dim = model.dim;

  std::vector<SuperPoly> fields;
  for (int i = 0; i < dim; ++i)
    for (const Monomial& m : coordinate_monomials(dim, degree))
      fields.push_back(monomial_poly(dim, m) * SuperPoly::odd(dim, i));
  if (static_cast<int>(fields.size()) > kMaxUnknowns) throw ResourceError("trivialization ansatz too large");

  std::vector<SuperPoly> images(fields.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < fields.size(); ++j)
    if (!cancel_requested()) images[j] = schouten(model.p, fields[j]);
  check_cancel();

  RowIndex rows;
  std::vector<SparseVector> cols = assemble(images, rows);
  SparseVector rhs = to_vector(q, rows);
  LinearSolution sol = solve(cols, rhs);

  Trivialization t;
  t.degree = degree;
  t.unknowns = static_cast<int>(fields.size());
  t.equations = rows.size();
  t.x = combine(dim, fields, sol.x);
  for (const SparseVector& k : sol.kernel) t.gauge.push_back(combine(dim, fields, k));
  t.residual = q - schouten(model.p, t.x);
  if (t.residual.is_zero()) t.residual = SuperPoly(dim);
  t.found = t.residual.is_zero();
  return t;
}

namespace {

struct JetDegrees {
  int a = 0;
  int rho = 0;
  int order = 0;
};

JetDegrees jet_degrees(const Monomial& m, int a_sym, int rho_sym) {
  JetDegrees d;
  for (const Factor& f : m.factors()) {
    const int e = static_cast<int>(f.exponent);
    if (f.atom.kind() != Atom::Kind::Jet || f.atom.copy() != 0)
      throw InputError("Q must be a differential polynomial in a and rho only");
    if (f.atom.index() == a_sym)
      d.a += e;
    else if (f.atom.index() == rho_sym)
      d.rho += e;
    else
      throw InputError("Q must be a differential polynomial in a and rho only");
    d.order += e * f.atom.derivatives().order();
  }
  return d;
}

std::vector<MultiIndex> multi_indices(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int ord = 0; ord <= max_order; ++ord) {
    std::vector<int> e(dim, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == dim - 1) {
        e[i] = left;
        MultiIndex mi;
        for (int k = 0; k < dim; ++k)
          for (int r = 0; r < e[k]; ++r) mi = mi.incremented(k);
        out.push_back(mi);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, ord);
  }
  return out;
}

// Monomials with `a_deg` jets of a and `rho_deg` jets of rho, total order
// `order`, every jet of order <= max_jet.
std::vector<Monomial> jet_monomials(int a_sym, int rho_sym, int a_deg, int rho_deg, int order, int max_jet,
                                    std::size_t limit) {
  std::vector<Monomial> out;
  if (a_deg < 0 || rho_deg < 0 || order < 0) return out;
  const std::vector<MultiIndex> jets = multi_indices(3, max_jet);
  std::vector<Atom> atoms;
  for (const MultiIndex& mi : jets) atoms.push_back(Atom::jet(a_sym, mi));
  for (const MultiIndex& mi : jets) atoms.push_back(Atom::jet(rho_sym, mi));
  const int split = static_cast<int>(jets.size());

  // nondecreasing choice of atom positions; a-jets before rho-jets
  std::function<void(int, int, int, int, Monomial)> rec = [&](int start, int a_left, int rho_left, int order_left,
                                                              Monomial m) {
    if (a_left == 0 && rho_left == 0) {
      if (order_left == 0) {
        out.push_back(m);
        if (out.size() > limit) throw ResourceError("lift ansatz exceeds " + std::to_string(limit) + " monomials");
      }
      return;
    }
    const bool pick_a = a_left > 0;
    const int lo = pick_a ? start : std::max(start, split);
    const int hi = pick_a ? split : static_cast<int>(atoms.size());
    for (int k = lo; k < hi; ++k) {
      const int o = atoms[k].derivatives().order();
      if (o > order_left) continue;
      rec(k, a_left - (pick_a ? 1 : 0), rho_left - (pick_a ? 0 : 1), order_left - o, m.times(atoms[k]));
    }
  };
  rec(0, a_deg, rho_deg, order, Monomial());
  return out;
}

}  // namespace

NambuLift nambu_lift_conditions(const SuperPoly& q, int max_jet_order, int max_unknowns) {
  if (max_jet_order < 0) throw InputError("jet order bound must be nonnegative");
  if (!q.is_zero() && (q.dim() != 3 || q.odd_degree() != 2)) throw InputError("Q must be a bivector in dimension 3");
  const NambuDatum abstract = abstract_nambu();
  const int a_sym = *find_symbol("a");
  const int rho_sym = *find_symbol("rho");

  NambuLift lift;
  lift.max_jet_order = max_jet_order;
  if (q.is_zero()) {
    lift.solvable = true;
    return lift;
  }
  std::optional<JetDegrees> deg;
  for (const auto& t : q.terms()) {
    JetDegrees d = jet_degrees(t.mono, a_sym, rho_sym);
    if (deg && (d.a != deg->a || d.rho != deg->rho || d.order != deg->order))
      throw InputError("Q is not homogeneous in a, rho and derivative order");
    deg = d;
  }
  lift.a_degree = deg->a;
  lift.rho_degree = deg->rho;
  lift.order = deg->order;

  const auto limit = static_cast<std::size_t>(max_unknowns);
  // tau_*(A, R) = R * tau(a, 1) + tau(A, rho)
  std::vector<Monomial> r_monos =
      jet_monomials(a_sym, rho_sym, deg->a - 1, deg->rho, deg->order - 1, max_jet_order, limit);
  std::vector<Monomial> a_monos = jet_monomials(a_sym, rho_sym, deg->a, deg->rho - 1, deg->order - 1, max_jet_order,
                                                limit - std::min(limit, r_monos.size()));
  const std::size_t n_r = r_monos.size();
  const std::size_t n = n_r + a_monos.size();
  lift.unknowns = static_cast<int>(n);

  const SuperPoly unit_density = nambu_bivector({abstract.a, SuperPoly::constant(3, 1)}).p;
  std::vector<SuperPoly> images(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < n; ++j) {
    if (cancel_requested()) continue;
    if (j < n_r)
      images[j] = monomial_poly(3, r_monos[j]) * unit_density;
    else
      images[j] = nambu_bivector({monomial_poly(3, a_monos[j - n_r]), abstract.rho}).p;
  }
  check_cancel();


  RowIndex rows;
  std::vector<SparseVector> cols = assemble(images, rows);
  SparseVector rhs = to_vector(q, rows);
  LinearSolution sol = solve(cols, rhs);
  lift.equations = rows.size();

  auto split = [&](const SparseVector& x) {
    SuperPolyBuilder r(3), a(3);
    for (const auto& [j, c] : x) {
      if (static_cast<std::size_t>(j) < n_r)
        r.add(0, r_monos[j], c);
      else
        a.add(0, a_monos[j - n_r], c);
    }
    SuperPoly ap = a.finish(), rp = r.finish();
    return std::pair{ap.is_zero() ? SuperPoly(3) : ap, rp.is_zero() ? SuperPoly(3) : rp};
  };
  std::tie(lift.a_dot, lift.rho_dot) = split(sol.x);
  for (const SparseVector& k : sol.kernel) lift.kernel.push_back(split(k));
  SuperPoly pushed = lift.rho_dot * unit_density + nambu_bivector({lift.a_dot, abstract.rho}).p;
  lift.residual = q - pushed;
  if (lift.residual.is_zero()) lift.residual = SuperPoly(3);
  lift.solvable = lift.residual.is_zero();
  return lift;
}

std::string format_picard(const std::vector<SuperPoly>& coefficients) {
  std::ostringstream os;
  for (std::size_t m = 0; m < coefficients.size(); ++m) os << "P" << m << ": " << to_string(coefficients[m]) << "\n";
  return os.str();
}

std::string format_trivialization(const Trivialization& t) {
  std::ostringstream os;
  os << "degree: " << t.degree << "\n";
  os << "unknowns: " << t.unknowns << "\n";
  os << "equations: " << t.equations << "\n";
  os << "found: " << (t.found ? "true" : "inconclusive") << "\n";
  if (t.found) {
    os << "X: " << to_string(t.x) << "\n";
    os << "gauge: " << t.gauge.size() << "\n";
    for (std::size_t k = 0; k < t.gauge.size(); ++k) os << "G" << k + 1 << ": " << to_string(t.gauge[k]) << "\n";
  } else {
    os << "residual terms: " << t.residual.size() << "\n";
  }
  return os.str();
}

std::string format_lift(const NambuLift& l) {
  std::ostringstream os;
  os << "a-degree: " << l.a_degree << "\n";
  os << "rho-degree: " << l.rho_degree << "\n";
  os << "order: " << l.order << "\n";
  os << "max jet order: " << l.max_jet_order << "\n";
  os << "unknowns: " << l.unknowns << "\n";
  os << "equations: " << l.equations << "\n";
  os << "solvable: " << (l.solvable ? "true" : "not at this ansatz") << "\n";
  if (l.solvable) {
    os << "A: " << to_string(l.a_dot) << "\n";
    os << "R: " << to_string(l.rho_dot) << "\n";
    os << "kernel: " << l.kernel.size() << "\n";
    for (std::size_t k = 0; k < l.kernel.size(); ++k)
      os << "K" << k + 1 << ": A = " << to_string(l.kernel[k].first) << ", R = " << to_string(l.kernel[k].second)
         << "\n";
  } else {
    os << "residual terms: " << l.residual.size() << "\n";
  }
  return os.str();
}

}  // namespace graphflow
