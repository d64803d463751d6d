// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sproc {

// Dense symmetric matrix with packed upper-triangle storage. M(i,j) and
// M(j,i) are the same slot, so symmetry holds by construction and cannot
// drift through arithmetic.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> d);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, double value);  // rejects non-finite values

  double frob_norm() const;
  bool finite() const;

  const std::vector<double>& packed() const { return data_; }

  SymMatrix& operator+=(const SymMatrix& rhs);
  SymMatrix& operator-=(const SymMatrix& rhs);
  SymMatrix& operator*=(double s);

 private:
  std::size_t index(int i, int j) const;

  int n_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // nondecreasing
  std::vector<double> eigenvectors;  // column-major, column k pairs with eigenvalue k
  int dim = 0;

  double vector_entry(int row, int k) const {
    return eigenvectors[static_cast<std::size_t>(k) * dim + row];
  }
  std::vector<double> eigenvector(int k) const;
};

inline constexpr double kDefaultEigTol = 1e-12;

// Cyclic Jacobi sweeps; converged when the off-diagonal Frobenius norm drops
// below tol_eig * ||M||_F. At most 100 sweeps, then NoConvergenceError.
// Deterministic: identical input bits give identical output bits. Each
// eigenvector is normalized so its first component above 1e-12 * max|v_i|
// is positive.
EigenDecomposition eigen_sym(const SymMatrix& m, double tol_eig = kDefaultEigTol);

std::pair<double, std::vector<double>> min_eig(const SymMatrix& m,
                                               double tol_eig = kDefaultEigTol);

// lambda_min(M) >= -tol.
bool is_psd(const SymMatrix& m, double tol);
// Default tolerance 1e-9 * max(1, ||M||_F).
bool is_psd(const SymMatrix& m);

double trace_inner(const SymMatrix& a, const SymMatrix& b);

// Modified Gram-Schmidt under the trace inner product. A member is dropped
// when its residual norm falls below tol_rank times its input norm.
std::vector<SymMatrix> gram_schmidt(std::span<const SymMatrix> ms, double tol_rank);

}  // namespace sproc
