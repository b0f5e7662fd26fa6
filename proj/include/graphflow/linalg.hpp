#pragma once

#include "graphflow/rational.hpp"

#include <map>
#include <vector>

namespace graphflow {

/// Sparse vector keyed by a dense integer index.
using SparseVector = std::map<int, Rational>;

void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

/// Exact incremental column elimination. Columns are added in order; each
/// independent column becomes a basis vector pivoted at its least row index,
/// dependent columns yield kernel vectors. Earlier columns are preferred.
class ColumnEliminator {
 public:
  /// Returns true if the column was independent of earlier ones.
  bool add_column(SparseVector column);

  struct Reduction {
    SparseVector remainder;    // rhs minus its projection on the span
    SparseVector combination;  // over column indices
  };
  Reduction reduce(SparseVector rhs) const;

  int column_count() const { return columns_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  /// Kernel vectors over column indices, one per dependent column.
  const std::vector<SparseVector>& kernel() const { return kernel_; }

 private:
  struct Basis {
    SparseVector vec;
    SparseVector comb;
  };
  // pivot row -> basis
  std::map<int, Basis> basis_;
  std::vector<SparseVector> kernel_;
  int columns_ = 0;
};

struct LinearSolution {
  bool consistent = false;
  SparseVector x;                    // canonical particular solution
  std::vector<SparseVector> kernel;  // reduced echelon basis
  SparseVector residual;             // rhs - A x
};

/// Solves A x = b for sparse columns of A. The particular solution is
/// reduced modulo the kernel (kernel pivots at the largest column index),
/// which makes it unique.
LinearSolution solve(const std::vector<SparseVector>& columns, const SparseVector& rhs);

/// Reduced row echelon form of a set of vectors; pivots at the largest index
/// when `pivot_high`, else at the least index.
std::vector<SparseVector> reduced_echelon(std::vector<SparseVector> vectors, bool pivot_high);

/// Reduces v modulo a reduced echelon basis with the given pivot side.
SparseVector reduce_modulo(SparseVector v, const std::vector<SparseVector>& echelon, bool pivot_high);

}  // namespace graphflow
