#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace volfit::linalg {

// Eigendecomposition of a dense symmetric matrix, eigenvalues ascending.
// vectors is row-major d x d with column k holding the eigenvector of
// values[k] (vectors[i*d + k] = component i).
struct SymEig {
  std::vector<double> values;
  std::vector<double> vectors;
};

// Cyclic Jacobi with thresholded sweeps. `a` is row-major d*d symmetric.
// Deterministic: fixed rotation order, no pivot search randomness.
SymEig eigh(std::vector<double> a, std::size_t d);

// LL^T factorization and solve with a pivot guard: fails (nullopt) as soon
// as a diagonal pivot drops to or below pivot_tol * max_ii a_ii, i.e. the
// matrix is not safely positive definite at that tolerance.
std::optional<std::vector<double>> cholesky_solve(std::vector<double> a, std::size_t d,
                                                  std::vector<double> b, double pivot_tol);

// Minimum-norm solution of a*x = b for symmetric positive semidefinite a via
// truncated spectral decomposition: eigenvalues <= rank_tol * max eigenvalue
// are dropped. Returns the all-zero vector when every eigenvalue is dropped.
// rank_out, when non-null, receives the number of retained eigenvalues.
std::vector<double> minnorm_solve(const std::vector<double>& a, std::size_t d,
                                  const std::vector<double>& b, double rank_tol,
                                  std::size_t* rank_out = nullptr);

}  // namespace volfit::linalg
