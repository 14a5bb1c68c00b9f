#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "restress/linalg.hpp"

using namespace restress::linalg;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int r, int c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("svd reconstructs the matrix") {
  std::mt19937_64 rng(1);
  for (const auto& [r, c] : {std::pair{8, 5}, {5, 8}, {6, 6}, {30, 4}}) {
    const Matrix a = random_matrix(rng, r, c);
    const Svd svd = svd_jacobi(a);
    const int k = static_cast<int>(svd.s.size());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        double v = 0.0;
        for (int t = 0; t < k; ++t) v += svd.u(i, t) * svd.s[t] * svd.v(j, t);
        CHECK(v == doctest::Approx(a(i, j)).epsilon(1e-10));
      }
    // Singular values descending, factors orthonormal.
    for (int t = 1; t < k; ++t) CHECK(svd.s[t] <= svd.s[t - 1] + 1e-14);
    for (int t1 = 0; t1 < k; ++t1)
      for (int t2 = 0; t2 < k; ++t2) {
        double uu = 0.0, vv = 0.0;
        for (int i = 0; i < r; ++i) uu += svd.u(i, t1) * svd.u(i, t2);
        for (int i = 0; i < c; ++i) vv += svd.v(i, t1) * svd.v(i, t2);
        CHECK(uu == doctest::Approx(t1 == t2 ? 1.0 : 0.0).epsilon(1e-10));
        CHECK(vv == doctest::Approx(t1 == t2 ? 1.0 : 0.0).epsilon(1e-10));
      }
  }
}

TEST_CASE("least squares matches the normal equations on a tall system") {
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(rng, 12, 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> b(12);
  for (auto& v : b) v = u(rng);
  const auto ls = solve_least_squares(a, b);
  // Gradient A^T (A x - b) must vanish.
  const auto grad = a.multiply_transposed(ls.residual);
  for (double g : grad) CHECK(std::abs(g) < 1e-12);
  CHECK(ls.rank == 4);
}

TEST_CASE("rank-deficient systems return the minimum-norm solution") {
  // Two identical columns: solution must split the weight evenly.
  Matrix a(4, 2);
  for (int i = 0; i < 4; ++i) a(i, 0) = a(i, 1) = i + 1.0;
  const std::vector<double> b{2.0, 4.0, 6.0, 8.0};
  const auto ls = solve_least_squares(a, b);
  CHECK(ls.rank == 1);
  CHECK(ls.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ls.x[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ls.residual_norm < 1e-12);
}

TEST_CASE("zero design matrix is rejected") {
  const Matrix a(3, 2);
  CHECK_THROWS_AS(solve_least_squares(a, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("symmetric eigenvalues of a known matrix") {
  // diag(1, 4) rotated by 45 degrees.
  Matrix a(2, 2);
  a(0, 0) = 2.5;
  a(0, 1) = a(1, 0) = -1.5;
  a(1, 1) = 2.5;
  const auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("levenberg-marquardt fits an exponential decay") {
  // y = exp(-k t) sampled exactly; recover k from a poor start.
  const double k_true = 1.7;
  std::vector<double> t(20), y(20);
  for (int i = 0; i < 20; ++i) {
    t[i] = 0.1 * i;
    y[i] = std::exp(-k_true * t[i]);
  }
  auto residual = [&](const std::vector<double>& p) {
    std::vector<double> r(20);
    for (int i = 0; i < 20; ++i) r[i] = std::exp(-p[0] * t[i]) - y[i];
    return r;
  };
  auto jacobian = [&](const std::vector<double>& p) {
    Matrix j(20, 1);
    for (int i = 0; i < 20; ++i) j(i, 0) = -t[i] * std::exp(-p[0] * t[i]);
    return j;
  };
  const auto lm = levenberg_marquardt(residual, jacobian, {0.2});
  CHECK(lm.converged);
  CHECK(lm.x[0] == doctest::Approx(k_true).epsilon(1e-9));
}

TEST_CASE("levenberg-marquardt honors the validity callback") {
  // Same decay fit, but the parameter is forbidden above 1.0; the solver
  // must stay in the valid region and stall there rather than step out.
  std::vector<double> t(10), y(10);
  for (int i = 0; i < 10; ++i) {
    t[i] = 0.2 * i;
    y[i] = std::exp(-1.7 * t[i]);
  }
  auto residual = [&](const std::vector<double>& p) {
    std::vector<double> r(10);
    for (int i = 0; i < 10; ++i) r[i] = std::exp(-p[0] * t[i]) - y[i];
    return r;
  };
  auto jacobian = [&](const std::vector<double>& p) {
    Matrix j(10, 1);
    for (int i = 0; i < 10; ++i) j(i, 0) = -t[i] * std::exp(-p[0] * t[i]);
    return j;
  };
  const auto lm = levenberg_marquardt(residual, jacobian, {0.5},
                                      [](const std::vector<double>& p) {
                                        return p[0] <= 1.0;
                                      });
  CHECK(lm.x[0] <= 1.0 + 1e-15);
}
