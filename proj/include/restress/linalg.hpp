#ifndef RESTRESS_LINALG_HPP
#define RESTRESS_LINALG_HPP

#include <functional>
#include <string>
#include <vector>

namespace restress::linalg {

/// Dense row-major matrix, just large enough for the fitting problems here.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Matrix transposed() const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transposed(const std::vector<double>& x) const;
};

/// Thin singular value decomposition A = U diag(s) V^T computed by one-sided
/// Jacobi rotations.  U is rows x min(rows,cols), V is cols x min(rows,cols),
/// singular values descending.
struct Svd {
  Matrix u;
  std::vector<double> s;
  Matrix v;
};

Svd svd_jacobi(const Matrix& a);

struct LeastSquaresResult {
  std::vector<double> x;
  int rank = 0;
  double condition = 0.0;        // sigma_max / sigma_min over kept values
  double residual_norm = 0.0;    // ||A x - b||
  std::vector<double> residual;  // A x - b
  std::vector<double> singular_values;
  /// Diagonal of (A^T A)^+ from the SVD; scale by the residual variance for
  /// coefficient standard errors.
  std::vector<double> covariance_diag;
};

/// Minimum-norm least squares via SVD.  Singular values below
/// rtol * sigma_max are truncated.
LeastSquaresResult solve_least_squares(const Matrix& a,
                                       const std::vector<double>& b,
                                       double rtol = 1e-10);

/// Same, with columns normalized internally before the SVD; results are
/// mapped back to the caller's parameterization.  Improves recovery when
/// column scales span many orders of magnitude.
LeastSquaresResult solve_least_squares_scaled(const Matrix& a,
                                              const std::vector<double>& b,
                                              double rtol = 1e-10);

/// Eigenvalues of a symmetric matrix by the classical Jacobi iteration,
/// ascending.  Used by diagnostics and tests, not on hot paths.
std::vector<double> symmetric_eigenvalues(Matrix a);

/// Levenberg-Marquardt for small dense nonlinear least squares.
struct LmOptions {
  double lambda0 = 1e-3;       // initial damping
  double lambda_factor = 10.0; // x on rejection, / on acceptance
  double step_tol = 1e-10;     // relative step size
  double ftol = 1e-12;         // relative residual change
  int max_iterations = 200;
};

struct LmResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// residual_fn returns the residual vector, jacobian_fn its Jacobian
/// (rows = residuals, cols = parameters).  validity_fn may reject iterates
/// (step rejected, damping increased).
LmResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residual_fn,
    const std::function<Matrix(const std::vector<double>&)>& jacobian_fn,
    std::vector<double> x0,
    const std::function<bool(const std::vector<double>&)>& validity_fn = {},
    const LmOptions& options = {});

double norm2(const std::vector<double>& v);

}  // namespace restress::linalg

#endif
