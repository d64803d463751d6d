// SPDX-License-Identifier: Apache-2.0
#include "sproc/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sproc/errors.hpp"

namespace sproc {

SymMatrix::SymMatrix(int dim) {
  if (dim < 0) throw DimensionMismatchError("SymMatrix: negative dimension");
  n_ = dim;
  data_.assign(static_cast<std::size_t>(n_) * (n_ + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
  return m;
}

std::size_t SymMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // row-major packed upper triangle
  return static_cast<std::size_t>(i) * n_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
         static_cast<std::size_t>(j - i);
}

void SymMatrix::set(int i, int j, double value) {
  if (!std::isfinite(value)) throw NonFiniteError("SymMatrix: non-finite entry");
  data_[index(i, j)] = value;
}

double SymMatrix::frob_norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      double v = (*this)(i, j);
      s += (i == j) ? v * v : 2.0 * v * v;
    }
  }
  return std::sqrt(s);
}

bool SymMatrix::finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& rhs) {
  if (n_ != rhs.n_) throw DimensionMismatchError("SymMatrix: dimension mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& rhs) {
  if (n_ != rhs.n_) throw DimensionMismatchError("SymMatrix: dimension mismatch in -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

std::vector<double> EigenDecomposition::eigenvector(int k) const {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) v[static_cast<std::size_t>(r)] = vector_entry(r, k);
  return v;
}

namespace {

double off_diag_frob(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v = a[static_cast<std::size_t>(i) * n + j];
      s += 2.0 * v * v;
    }
  }
  return std::sqrt(s);
}

void fix_sign(std::vector<double>& col) {
  double amax = 0.0;
  for (double v : col) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) return;
  for (double v : col) {
    if (std::fabs(v) > 1e-12 * amax) {
      if (v < 0.0) {
        for (double& w : col) w = -w;
      }
      return;
    }
  }
}

}  // namespace

EigenDecomposition eigen_sym(const SymMatrix& m, double tol_eig) {
  if (!m.finite()) throw NonFiniteError("eigen_sym: non-finite entry");
  const int n = m.dim();
  EigenDecomposition out;
  out.dim = n;
  if (n == 0) return out;

  const double norm_m = m.frob_norm();
  const double target = tol_eig * norm_m;

  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j);
  }
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  auto vt = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

  const int max_sweeps = 100;
  bool converged = off_diag_frob(a, n) <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = at(i, p);
          double aiq = at(i, q);
          at(i, p) = aip - s * (aiq + tau * aip);
          at(p, i) = at(i, p);
          at(i, q) = aiq + s * (aip - tau * aiq);
          at(q, i) = at(i, q);
        }
        for (int i = 0; i < n; ++i) {
          double vip = vt(i, p);
          double viq = vt(i, q);
          vt(i, p) = vip - s * (viq + tau * vip);
          vt(i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
    converged = off_diag_frob(a, n) <= target;
  }
  if (!converged) {
    throw NoConvergenceError("eigen_sym: residual " + std::to_string(off_diag_frob(a, n)) +
                             " above target after 100 sweeps");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return at(x, x) < at(y, y); });

  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors.resize(static_cast<std::size_t>(n) * n);
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[static_cast<std::size_t>(k)] = at(src, src);
    for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = vt(r, src);
    fix_sign(col);
    for (int r = 0; r < n; ++r) {
      out.eigenvectors[static_cast<std::size_t>(k) * n + r] = col[static_cast<std::size_t>(r)];
    }
  }
  return out;
}

std::pair<double, std::vector<double>> min_eig(const SymMatrix& m, double tol_eig) {
  EigenDecomposition d = eigen_sym(m, tol_eig);
  if (d.dim == 0) throw DimensionMismatchError("min_eig: empty matrix");
  return {d.eigenvalues[0], d.eigenvector(0)};
}

bool is_psd(const SymMatrix& m, double tol) {
  if (m.dim() == 0) return true;
  return min_eig(m).first >= -tol;
}

bool is_psd(const SymMatrix& m) { return is_psd(m, 1e-9 * std::max(1.0, m.frob_norm())); }

double trace_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("trace_inner: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = i; j < a.dim(); ++j) {
      double v = a(i, j) * b(i, j);
      s += (i == j) ? v : 2.0 * v;
    }
  }
  return s;
}

std::vector<SymMatrix> gram_schmidt(std::span<const SymMatrix> ms, double tol_rank) {
  std::vector<SymMatrix> basis;
  for (const SymMatrix& m : ms) {
    if (!basis.empty() && m.dim() != basis[0].dim()) {
      throw DimensionMismatchError("gram_schmidt: dimension mismatch");
    }
    double norm0 = m.frob_norm();
    SymMatrix r = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (const SymMatrix& e : basis) r -= trace_inner(r, e) * e;
    }
    double rn = r.frob_norm();
    if (norm0 == 0.0 || rn <= tol_rank * norm0) continue;
    basis.push_back((1.0 / rn) * r);
  }
  return basis;
}

}  // namespace sproc
