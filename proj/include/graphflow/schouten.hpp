#pragma once

#include "graphflow/superpoly.hpp"

namespace graphflow {

/// Odd Poisson bracket on multivectors over copy 0:
///   [[A,B]] = sum_i (A d<-/dxi_i)(d/dx^i B) - (d/dx^i A)(d->/dxi_i B).
/// On vector fields this is the commutator; [[X,f]] = X(f).
SuperPoly schouten(const SuperPoly& a, const SuperPoly& b);

/// (1/2)[[P,P]]; P must be homogeneous of odd degree 2 (or zero).
SuperPoly jacobiator(const SuperPoly& p);

/// [[P, A]].
SuperPoly poisson_differential(const SuperPoly& p, const SuperPoly& a);

/// Odd degree of a homogeneous multivector; 0 for the zero polynomial.
/// Throws InputError on mixed degrees.
int multivector_degree(const SuperPoly& a);

}  // namespace graphflow
