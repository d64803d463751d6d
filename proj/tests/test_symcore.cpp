// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sproc/errors.hpp"
#include "sproc/rng.hpp"
#include "sproc/symcore.hpp"

using namespace sproc;

namespace {

SymMatrix mat2(double a, double b, double c) {
  SymMatrix m(2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 1, c);
  return m;
}

SymMatrix random_sym(Rng& rng, int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
  }
  return m;
}

double max_abs_offdiag_gram(const EigenDecomposition& e) {
  double worst = 0.0;
  for (int a = 0; a < e.dim; ++a) {
    for (int b = 0; b < e.dim; ++b) {
      double d = 0.0;
      for (int i = 0; i < e.dim; ++i) d += e.vector_entry(i, a) * e.vector_entry(i, b);
      double want = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(d - want));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("packed storage keeps both triangles in sync") {
  SymMatrix m(3);
  m.set(0, 1, 5.0);
  m.set(2, 1, -2.0);
  CHECK(m(1, 0) == 5.0);
  CHECK(m(0, 1) == 5.0);
  CHECK(m(1, 2) == -2.0);
  CHECK(m(2, 2) == 0.0);
  CHECK(m.dim() == 3);
  CHECK(m.packed().size() == 6);
}

TEST_CASE("set rejects non-finite entries") {
  SymMatrix m(2);
  CHECK_THROWS_AS(m.set(0, 0, std::nan("")), NonFiniteError);
  CHECK_THROWS_AS(m.set(0, 1, HUGE_VAL), NonFiniteError);
  CHECK(m.finite());
}

TEST_CASE("frob_norm counts off-diagonal entries twice") {
  CHECK(mat2(1, 2, 3).frob_norm() == doctest::Approx(std::sqrt(18.0)).epsilon(1e-14));
  CHECK(SymMatrix(4).frob_norm() == 0.0);
}

TEST_CASE("identity and diagonal factories") {
  SymMatrix i3 = SymMatrix::identity(3);
  CHECK(i3(0, 0) == 1.0);
  CHECK(i3(1, 2) == 0.0);
  std::vector<double> d{1.0, -2.0, 3.0};
  SymMatrix dm = SymMatrix::diagonal(d);
  CHECK(dm(1, 1) == -2.0);
  CHECK(dm(0, 2) == 0.0);
}

TEST_CASE("arithmetic acts entrywise") {
  SymMatrix a = mat2(1, 2, 3);
  SymMatrix b = mat2(10, 20, 30);
  SymMatrix s = a + b;
  CHECK(s(0, 1) == 22.0);
  SymMatrix d = b - a;
  CHECK(d(1, 1) == 27.0);
  SymMatrix t = 2.0 * a;
  CHECK(t(0, 0) == 2.0);
  a += b;
  CHECK(a(1, 1) == 33.0);
  a *= 0.5;
  CHECK(a(0, 1) == 11.0);
}

TEST_CASE("eigen on [[2,1],[1,2]] gives 1 and 3 with known vectors") {
  EigenDecomposition e = eigen_sym(mat2(2, 1, 2));
  const double r = std::sqrt(0.5);
  REQUIRE(e.eigenvalues.size() == 2);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.vector_entry(0, 0) == doctest::Approx(r).epsilon(1e-12));
  CHECK(e.vector_entry(1, 0) == doctest::Approx(-r).epsilon(1e-12));
  CHECK(e.vector_entry(0, 1) == doctest::Approx(r).epsilon(1e-12));
  CHECK(e.vector_entry(1, 1) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("eigen on the exchange matrix") {
  EigenDecomposition e = eigen_sym(mat2(0, 1, 0));
  const double r = std::sqrt(0.5);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // sign convention: leading significant component positive
  CHECK(e.vector_entry(0, 0) == doctest::Approx(r).epsilon(1e-12));
  CHECK(e.vector_entry(1, 0) == doctest::Approx(-r).epsilon(1e-12));
  CHECK(e.vector_entry(0, 1) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("eigen handles dim 1") {
  SymMatrix m(1);
  m.set(0, 0, 5.0);
  EigenDecomposition e = eigen_sym(m);
  CHECK(e.eigenvalues[0] == 5.0);
  CHECK(e.vector_entry(0, 0) == 1.0);
}

TEST_CASE("eigen reconstructs, is orthonormal, and is deterministic") {
  Rng rng(42);
  for (int n : {2, 3, 5, 8, 12}) {
    SymMatrix m = random_sym(rng, n);
    EigenDecomposition e = eigen_sym(m);
    REQUIRE(static_cast<int>(e.eigenvalues.size()) == n);
    for (int k = 0; k + 1 < n; ++k) CHECK(e.eigenvalues[k] <= e.eigenvalues[k + 1]);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += e.eigenvalues[k] * e.vector_entry(i, k) * e.vector_entry(j, k);
        err = std::max(err, std::fabs(v - m(i, j)));
      }
    }
    CHECK(err <= 1e-10 * (1.0 + m.frob_norm()));
    CHECK(max_abs_offdiag_gram(e) <= 1e-10);
    EigenDecomposition e2 = eigen_sym(m);
    CHECK(e.eigenvalues == e2.eigenvalues);
    CHECK(e.eigenvectors == e2.eigenvectors);
  }
}

TEST_CASE("min_eig matches the front of the spectrum") {
  Rng rng(7);
  SymMatrix m = random_sym(rng, 5);
  EigenDecomposition e = eigen_sym(m);
  auto [lam, v] = min_eig(m);
  CHECK(lam == e.eigenvalues[0]);
  CHECK(v == e.eigenvector(0));
}

TEST_CASE("is_psd on small fixed matrices") {
  CHECK(is_psd(mat2(1, 1, 1)));
  CHECK_FALSE(is_psd(mat2(1, 2, 1)));
  CHECK(is_psd(SymMatrix::identity(3)));
  CHECK_FALSE(is_psd(-1.0 * SymMatrix::identity(3)));
  CHECK(is_psd(SymMatrix(3)));
  std::vector<double> tiny{-1e-12, 1.0};
  CHECK(is_psd(SymMatrix::diagonal(tiny), 1e-9));
  std::vector<double> big{-1e-3, 1.0};
  CHECK_FALSE(is_psd(SymMatrix::diagonal(big), 1e-9));
}

TEST_CASE("trace_inner sums entrywise products over the full square") {
  CHECK(trace_inner(mat2(1, 2, 0), mat2(0, 1, 3)) == doctest::Approx(4.0).epsilon(1e-14));
  SymMatrix i2 = SymMatrix::identity(2);
  CHECK(trace_inner(i2, i2) == 2.0);
}

TEST_CASE("gram_schmidt normalizes, drops dependents, splits diagonals") {
  std::vector<SymMatrix> one{SymMatrix::identity(2)};
  auto b1 = gram_schmidt(one, 1e-12);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0](0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(b1[0](0, 1) == 0.0);

  SymMatrix m = mat2(1, 2, -1);
  std::vector<SymMatrix> dep{m, 2.0 * m};
  CHECK(gram_schmidt(dep, 1e-12).size() == 1);

  std::vector<double> d10{1.0, 0.0};
  std::vector<double> d11{1.0, 1.0};
  std::vector<SymMatrix> diag{SymMatrix::diagonal(d10), SymMatrix::diagonal(d11)};
  auto b2 = gram_schmidt(diag, 1e-12);
  REQUIRE(b2.size() == 2);
  CHECK(b2[0](0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(b2[1](0, 0)) <= 1e-14);
  CHECK(b2[1](1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gram_schmidt output is orthonormal and spans the input") {
  Rng rng(11);
  std::vector<SymMatrix> ms;
  for (int k = 0; k < 4; ++k) ms.push_back(random_sym(rng, 3));
  auto basis = gram_schmidt(ms, 1e-12);
  REQUIRE(basis.size() <= 4);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double want = a == b ? 1.0 : 0.0;
      CHECK(std::fabs(trace_inner(basis[a], basis[b]) - want) <= 1e-10);
    }
  }
  for (const SymMatrix& m : ms) {
    SymMatrix rec(3);
    for (const SymMatrix& e : basis) rec += trace_inner(m, e) * e;
    CHECK((rec - m).frob_norm() <= 1e-9 * (1.0 + m.frob_norm()));
  }
}
