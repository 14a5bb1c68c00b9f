#include "restress/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace restress::linalg {

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::multiply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw std::invalid_argument("Matrix::multiply: size mismatch");
  std::vector<double> y(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    const double* row = &a[static_cast<size_t>(i) * cols];
    for (int j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> Matrix::multiply_transposed(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != rows)
    throw std::invalid_argument("Matrix::multiply_transposed: size mismatch");
  std::vector<double> y(cols, 0.0);
  for (int i = 0; i < rows; ++i) {
    const double* row = &a[static_cast<size_t>(i) * cols];
    for (int j = 0; j < cols; ++j) y[j] += row[j] * x[i];
  }
  return y;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

namespace {

// One-sided Jacobi on the columns of work (rows >= cols assumed).
// On return the columns of work are mutually orthogonal and v accumulates
// the applied rotations.
void jacobi_orthogonalize(Matrix& work, Matrix& v) {
  const int m = work.rows, n = work.cols;
  const double tol = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          const double xp = work(i, p), xq = work(i, q);
          app += xp * xp;
          aqq += xq * xq;
          apq += xp * xq;
        }
        if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double xp = work(i, p), xq = work(i, q);
          work(i, p) = c * xp - s * xq;
          work(i, q) = s * xp + c * xq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

Svd svd_tall(const Matrix& a) {
  Matrix work = a;
  Matrix v = Matrix::identity(a.cols);
  jacobi_orthogonalize(work, v);

  const int n = a.cols;
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) {
    double nrm = 0.0;
    for (int i = 0; i < a.rows; ++i) nrm += work(i, j) * work(i, j);
    s[j] = std::sqrt(nrm);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return s[i] > s[j]; });

  Svd out;
  out.u = Matrix(a.rows, n);
  out.v = Matrix(n, n);
  out.s.resize(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.s[j] = s[src];
    const double inv = s[src] > 0.0 ? 1.0 / s[src] : 0.0;
    for (int i = 0; i < a.rows; ++i) out.u(i, j) = work(i, src) * inv;
    for (int i = 0; i < n; ++i) out.v(i, j) = v(i, src);
  }
  return out;
}

}  // namespace

Svd svd_jacobi(const Matrix& a) {
  if (a.rows <= 0 || a.cols <= 0)
    throw std::invalid_argument("svd_jacobi: empty matrix");
  if (a.rows >= a.cols) return svd_tall(a);
  Svd t = svd_tall(a.transposed());
  Svd out;
  out.u = t.v;
  out.v = t.u;
  out.s = t.s;
  return out;
}

LeastSquaresResult solve_least_squares(const Matrix& a,
                                       const std::vector<double>& b,
                                       double rtol) {
  if (static_cast<int>(b.size()) != a.rows)
    throw std::invalid_argument("solve_least_squares: rhs size mismatch");
  const Svd svd = svd_jacobi(a);
  const int k = static_cast<int>(svd.s.size());
  const double smax = svd.s.empty() ? 0.0 : svd.s.front();
  if (smax == 0.0)
    throw std::invalid_argument("solve_least_squares: zero design matrix");

  LeastSquaresResult out;
  out.singular_values = svd.s;
  double smin_kept = smax;
  std::vector<double> coeff(k, 0.0);
  for (int j = 0; j < k; ++j) {
    if (svd.s[j] > rtol * smax) {
      double d = 0.0;
      for (int i = 0; i < a.rows; ++i) d += svd.u(i, j) * b[i];
      coeff[j] = d / svd.s[j];
      ++out.rank;
      smin_kept = svd.s[j];
    }
  }
  out.condition = smax / smin_kept;
  out.x.assign(a.cols, 0.0);
  for (int i = 0; i < a.cols; ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += svd.v(i, j) * coeff[j];
    out.x[i] = s;
  }
  out.residual = a.multiply(out.x);
  for (int i = 0; i < a.rows; ++i) out.residual[i] -= b[i];
  out.residual_norm = norm2(out.residual);
  out.covariance_diag.assign(a.cols, 0.0);
  for (int i = 0; i < a.cols; ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j)
      if (svd.s[j] > rtol * smax) {
        const double f = svd.v(i, j) / svd.s[j];
        s += f * f;
      }
    out.covariance_diag[i] = s;
  }
  return out;
}

LeastSquaresResult solve_least_squares_scaled(const Matrix& a,
                                              const std::vector<double>& b,
                                              double rtol) {
  std::vector<double> colnorm(a.cols, 0.0);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) colnorm[j] += a(i, j) * a(i, j);
  for (double& c : colnorm) c = c > 0.0 ? std::sqrt(c) : 1.0;
  Matrix scaled = a;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) scaled(i, j) /= colnorm[j];
  LeastSquaresResult out = solve_least_squares(scaled, b, rtol);
  for (int j = 0; j < a.cols; ++j) {
    out.x[j] /= colnorm[j];
    out.covariance_diag[j] /= colnorm[j] * colnorm[j];
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
  if (a.rows != a.cols)
    throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
  const int n = a.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * (1.0 + std::abs(a(0, 0)))) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

LmResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residual_fn,
    const std::function<Matrix(const std::vector<double>&)>& jacobian_fn,
    std::vector<double> x0,
    const std::function<bool(const std::vector<double>&)>& validity_fn,
    const LmOptions& options) {
  const int p = static_cast<int>(x0.size());
  LmResult out;
  out.x = std::move(x0);
  std::vector<double> r = residual_fn(out.x);
  double cost = norm2(r);
  double lambda = options.lambda0;

  for (out.iterations = 1; out.iterations <= options.max_iterations;
       ++out.iterations) {
    const Matrix j = jacobian_fn(out.x);
    // Normal equations with Marquardt scaling on the diagonal.
    Matrix h(p, p);
    std::vector<double> g(p, 0.0);
    for (int i = 0; i < j.rows; ++i)
      for (int c = 0; c < p; ++c) {
        g[c] += j(i, c) * r[i];
        for (int d = c; d < p; ++d) h(c, d) += j(i, c) * j(i, d);
      }
    for (int c = 0; c < p; ++c)
      for (int d = 0; d < c; ++d) h(c, d) = h(d, c);

    bool stepped = false;
    for (int attempt = 0; attempt < 40 && !stepped; ++attempt) {
      Matrix hd = h;
      for (int c = 0; c < p; ++c)
        hd(c, c) += lambda * std::max(h(c, c), 1e-300);
      std::vector<double> neg_g(p);
      for (int c = 0; c < p; ++c) neg_g[c] = -g[c];
      std::vector<double> step = solve_least_squares(hd, neg_g, 1e-14).x;

      std::vector<double> trial(out.x);
      for (int c = 0; c < p; ++c) trial[c] += step[c];
      const bool valid = !validity_fn || validity_fn(trial);
      double trial_cost = std::numeric_limits<double>::infinity();
      std::vector<double> trial_r;
      if (valid) {
        trial_r = residual_fn(trial);
        trial_cost = norm2(trial_r);
      }
      if (valid && trial_cost <= cost) {
        const double step_rel = norm2(step) / std::max(norm2(out.x), 1e-300);
        const double df_rel =
            (cost - trial_cost) / std::max(cost, 1e-300);
        out.x = std::move(trial);
        r = std::move(trial_r);
        cost = trial_cost;
        lambda = std::max(lambda / options.lambda_factor, 1e-15);
        stepped = true;
        if (step_rel < options.step_tol || df_rel < options.ftol) {
          out.converged = true;
          out.residual_norm = cost;
          out.message = "converged";
          return out;
        }
      } else {
        lambda *= options.lambda_factor;
      }
    }
    if (!stepped) {
      // No acceptable step even at heavy damping: stationary point.
      out.converged = true;
      out.residual_norm = cost;
      out.message = "converged (no descent step)";
      return out;
    }
  }
  out.residual_norm = cost;
  out.message = "max iterations reached";
  return out;
}

}  // namespace restress::linalg
