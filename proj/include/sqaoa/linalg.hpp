#pragma once

#include <vector>

namespace sqaoa {

// Eigendecomposition of a small dense real-symmetric matrix.
// vectors is column-major: vectors[col*dim + row] is component `row` of the
// eigenvector belonging to eigenvalues[col]. Eigenvalues ascend.
struct SymEigen {
  int dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;
};

// Cyclic Jacobi rotations; intended for the restricted mixer blocks whose
// dimension is C(m,k). Throws std::invalid_argument on a non-square input.
SymEigen jacobi_eigensolve(const std::vector<double>& sym, int dim);

} // namespace sqaoa
