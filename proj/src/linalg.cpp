#include "graphflow/linalg.hpp"

#include "graphflow/cancel.hpp"

namespace graphflow {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

bool ColumnEliminator::add_column(SparseVector column) {
  SparseVector comb{{columns_++, Rational(1)}};
  while (!column.empty()) {
    auto it = basis_.find(column.begin()->first);
    if (it == basis_.end()) break;
    Rational f = column.begin()->second / it->second.vec.begin()->second;
    axpy(column, -f, it->second.vec);
    axpy(comb, -f, it->second.comb);
  }
  if (column.empty()) {
    kernel_.push_back(std::move(comb));
    return false;
  }
  int pivot = column.begin()->first;
  basis_.emplace(pivot, Basis{std::move(column), std::move(comb)});
  return true;
}

ColumnEliminator::Reduction ColumnEliminator::reduce(SparseVector rhs) const {
  Reduction out;
  // Leading-term reduction leaves entries above the first non-pivot row; keep
  // scanning past non-pivot rows so the remainder is as small as possible.
  auto cursor = rhs.begin();
  while (cursor != rhs.end()) {
    int row = cursor->first;
    auto it = basis_.find(row);
    if (it == basis_.end()) {
      ++cursor;
      continue;
    }
    Rational f = cursor->second / it->second.vec.begin()->second;
    axpy(rhs, -f, it->second.vec);
    axpy(out.combination, f, it->second.comb);
    cursor = rhs.upper_bound(row);
  }
  out.remainder = std::move(rhs);
  return out;
}

namespace {

int pivot_of(const SparseVector& v, bool high) { return high ? v.rbegin()->first : v.begin()->first; }

}  // namespace

std::vector<SparseVector> reduced_echelon(std::vector<SparseVector> vectors, bool pivot_high) {
  std::map<int, SparseVector> basis;
  for (SparseVector& v : vectors) {
    for (const auto& [p, b] : basis) {
      auto it = v.find(p);
      if (it != v.end()) {
        Rational f = it->second;
        axpy(v, -f, b);
      }
    }
    if (v.empty()) continue;
    int p = pivot_of(v, pivot_high);
    Rational inv = 1 / v[p];
    for (auto& [k, c] : v) c *= inv;
    for (auto& [q, b] : basis) {
      auto it = b.find(p);
      if (it != b.end()) {
        Rational f = it->second;
        axpy(b, -f, v);
      }
    }
    basis.emplace(p, std::move(v));
  }
  std::vector<SparseVector> out;
  for (auto& [p, b] : basis) out.push_back(std::move(b));
  return out;
}

SparseVector reduce_modulo(SparseVector v, const std::vector<SparseVector>& echelon, bool pivot_high) {
  for (const SparseVector& b : echelon) {
    auto it = v.find(pivot_of(b, pivot_high));
    if (it != v.end()) {
      Rational f = it->second;
      axpy(v, -f, b);
    }
  }
  return v;
}

LinearSolution solve(const std::vector<SparseVector>& columns, const SparseVector& rhs) {
  ColumnEliminator elim;
  for (const SparseVector& c : columns) {
    check_cancel();
    elim.add_column(c);
  }
  auto red = elim.reduce(rhs);
  LinearSolution sol;
  sol.consistent = red.remainder.empty();
  sol.kernel = reduced_echelon(elim.kernel(), true);
  sol.x = reduce_modulo(std::move(red.combination), sol.kernel, true);
  sol.residual = std::move(red.remainder);
  return sol;
}

}  // namespace graphflow
