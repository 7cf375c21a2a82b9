#include "sqaoa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sqaoa {

SymEigen jacobi_eigensolve(const std::vector<double>& sym, int dim) {
  if (dim < 0 || sym.size() != static_cast<size_t>(dim) * dim)
    throw std::invalid_argument("jacobi_eigensolve: matrix size does not match dim");

  std::vector<double> a = sym;
  std::vector<double> v(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i) * dim + i] = 1.0;
  auto A = [&](int r, int c) -> double& { return a[static_cast<size_t>(r) * dim + c]; };
  auto V = [&](int r, int c) -> double& { return v[static_cast<size_t>(r) * dim + c]; };

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) off += A(p, q) * A(p, q);
    if (off < 1e-26) break;

    for (int p = 0; p < dim - 1; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < dim; ++r) {
          const double arp = A(r, p), arq = A(r, q);
          A(r, p) = c * arp - s * arq;
          A(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < dim; ++r) {
          const double apr = A(p, r), aqr = A(q, r);
          A(p, r) = c * apr - s * aqr;
          A(q, r) = s * apr + c * aqr;
        }
        for (int r = 0; r < dim; ++r) {
          const double vrp = V(r, p), vrq = V(r, q);
          V(r, p) = c * vrp - s * vrq;
          V(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  SymEigen out;
  out.dim = dim;
  out.eigenvalues.resize(dim);
  for (int i = 0; i < dim; ++i) out.eigenvalues[i] = A(i, i);

  // Sort eigenpairs ascending.
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return out.eigenvalues[x] < out.eigenvalues[y]; });
  SymEigen sorted;
  sorted.dim = dim;
  sorted.eigenvalues.resize(dim);
  sorted.vectors.resize(static_cast<size_t>(dim) * dim);
  for (int col = 0; col < dim; ++col) {
    sorted.eigenvalues[col] = out.eigenvalues[order[col]];
    for (int row = 0; row < dim; ++row)
      sorted.vectors[static_cast<size_t>(col) * dim + row] = V(row, order[col]);
  }
  return sorted;
}

} // namespace sqaoa
