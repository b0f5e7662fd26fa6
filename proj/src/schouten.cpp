#include "graphflow/schouten.hpp"

#include "graphflow/errors.hpp"

namespace graphflow {

namespace {

void check_base(const SuperPoly& a) {
  for (const auto& t : a.terms()) {
    if (t.odd >> a.dim()) throw InputError("multivector uses odd variables beyond its dimension");
    for (const Factor& f : t.mono.factors())
      if (f.atom.copy() != 0) throw InputError("multivector lives on a vertex copy");
  }
}

}  // namespace

SuperPoly schouten(const SuperPoly& a, const SuperPoly& b) {
  if (a.is_zero() || b.is_zero()) return SuperPoly(a.is_zero() ? b.dim() : a.dim());
  if (a.dim() != b.dim()) throw InputError("dimension mismatch in Schouten bracket");
  check_base(a);
  check_base(b);
  SuperPolyBuilder out(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    out.add(a.right_derivative_odd(i) * b.derivative_x(i));
    out.add(a.derivative_x(i) * b.derivative_odd(i), -1);
  }
  return out.finish();
}

int multivector_degree(const SuperPoly& a) {
  if (a.is_zero()) return 0;
  auto d = a.odd_degree();
  if (!d) throw InputError("multivector is not homogeneous in the odd variables");
  return *d;
}

SuperPoly jacobiator(const SuperPoly& p) {
  if (!p.is_zero() && multivector_degree(p) != 2) throw InputError("jacobiator needs a bivector");
  return Rational(1, 2) * schouten(p, p);
}

SuperPoly poisson_differential(const SuperPoly& p, const SuperPoly& a) { return schouten(p, a); }

}  // namespace graphflow
