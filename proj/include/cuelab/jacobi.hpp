#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cuelab {

struct JacobiResult {
  std::vector<double> eigenvalues;  // sorted descending
  int sweeps = 0;
  double off_diagonal_norm = 0.0;   // Frobenius norm of the off-diagonal part at exit
};

/// Cyclic Jacobi eigenvalues of a real symmetric matrix (row-major, n x n).
/// Throws NumericalError after `max_sweeps` sweeps without convergence.
/// Convergence: off-diagonal Frobenius norm below 1e-12 * n.
JacobiResult jacobi_symmetric(std::vector<double> a, std::size_t n, int max_sweeps = 100);

/// Cyclic Jacobi eigenvalues of a complex Hermitian matrix (row-major,
/// n x n). Each step first rotates the phase of a_pq to the real axis and
/// then applies a real plane rotation.
JacobiResult jacobi_hermitian(std::vector<std::complex<double>> a, std::size_t n,
                              int max_sweeps = 100);

}  // namespace cuelab
