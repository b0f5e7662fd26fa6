#pragma once

#include "graphflow/graph_complex.hpp"
#include "graphflow/superpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphflow {

/// Scalars a and rho of the bracket rho * det(D(a,f,g)/D(x1,x2,x3)).
struct NambuDatum {
  SuperPoly a{3};
  SuperPoly rho{3};
};

struct PoissonModel {
  std::string name;
  int dim = 0;
  SuperPoly p;
  std::vector<std::string> parameters;  // symbols treated as unknown constants
  std::optional<NambuDatum> nambu;

  SuperPoly jacobi_residual() const;
};

/// Abstract a and rho (function symbols "a" and "rho").
NambuDatum abstract_nambu();

/// P^{ij} = rho * eps^{ijk} da/dx^k.
PoissonModel nambu_bivector(const NambuDatum& d, std::string name = "nambu");

/// Structure constants c[i][j][k] (0-based) giving P^{ij} = c^{ij}_k x^k for
/// i < j. Throws InputError unless c[i][j] = -c[j][i].
using StructureConstants = std::vector<std::vector<std::vector<Rational>>>;
PoissonModel linear_bracket(const StructureConstants& c, std::string name = "linear");
StructureConstants so3_constants();

/// Or(gamma)(P). Non-pseudo records must be cocycles.
SuperPoly apply_symmetry(const PoissonModel& model, const CocycleRecord& gamma);

inline constexpr int kMaxPicardOrder = 6;
inline constexpr int kDefaultPicardOrder = 3;

/// Coefficients P_0..P_k of the formal solution of dP/de = Or(gamma)(P) with
/// P_0 = model.p, from (m+1) P_{m+1} = sum over m_1+..+m_n = m of
/// Or(gamma)(P_{m_1}, .., P_{m_n}).
std::vector<SuperPoly> picard_integrate(const PoissonModel& model, const CocycleRecord& gamma,
                                        int order = kDefaultPicardOrder);

/// Coefficients of Or(gamma)(P) in the non-parameter atoms and odd variables,
/// as polynomials in the model parameters. Each is scaled to leading
/// coefficient 1; duplicates removed; sorted by text.
std::vector<SuperPoly> invariance_conditions(const PoissonModel& family, const CocycleRecord& gamma);

/// Substitutes values for model parameters.
PoissonModel specialize(const PoissonModel& family, const std::map<std::string, Rational>& values);

inline constexpr int kMaxTrivializeDegree = 6;
inline constexpr int kMaxUnknowns = 20000;

struct Trivialization {
  int degree = 0;
  int unknowns = 0;
  int equations = 0;
  bool found = false;
  SuperPoly x;                  // canonical solution of Q = [[P,X]]
  std::vector<SuperPoly> gauge; // basis of {G : [[P,G]] = 0} within the ansatz
  SuperPoly residual;           // Q - [[P,X]] for the best approximation
};

/// Polynomial vector fields of coefficient degree <= D.
Trivialization trivialize(const PoissonModel& model, const SuperPoly& q, int degree);

struct NambuLift {
  int a_degree = 0;
  int rho_degree = 0;
  int order = 0;
  int max_jet_order = 0;
  int unknowns = 0;
  int equations = 0;
  bool solvable = false;
  SuperPoly a_dot{3};
  SuperPoly rho_dot{3};
  std::vector<std::pair<SuperPoly, SuperPoly>> kernel;
  SuperPoly residual{3};
};

inline constexpr int kDefaultLiftJetOrder = 2;

/// Looks for differential polynomials A, R in the abstract a, rho with
/// tau_*(A, R) = Q, where tau(a, rho) is the Nambu bivector. The ansatz
/// spans all monomials homogeneous with Q (degrees in a and rho, total
/// derivative order) whose jets have order <= max_jet_order.
NambuLift nambu_lift_conditions(const SuperPoly& q, int max_jet_order = kDefaultLiftJetOrder,
                                int max_unknowns = kMaxUnknowns);

std::string format_picard(const std::vector<SuperPoly>& coefficients);
std::string format_trivialization(const Trivialization& t);
std::string format_lift(const NambuLift& l);

}  // namespace graphflow
