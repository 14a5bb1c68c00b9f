#include "restress/axisym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "restress/linalg.hpp"

namespace restress::axisym {

namespace {

// Evaluate a descending-coefficient polynomial: c[0] r^(n-1) + ... + c[n-1].
double eval_desc(const std::vector<double>& c, double r) {
  double v = 0.0;
  for (double ci : c) v = v * r + ci;
  return v;
}

double hooke_factor(const ElasticModel& m) {
  return m.youngs_modulus /
         ((1.0 + m.poisson_ratio) * (1.0 - 2.0 * m.poisson_ratio));
}

SymTensor2 axisym_stress(const SymTensor2& eps, const ElasticModel& m) {
  const double nu = m.poisson_ratio;
  const double k = hooke_factor(m);
  // Components ordered (rr, tt, zz) in the (xx, yy, zz) slots.
  return SymTensor2::diag(
      k * ((1.0 - nu) * eps.xx + nu * eps.yy + nu * eps.zz),
      k * (nu * eps.xx + (1.0 - nu) * eps.yy + nu * eps.zz),
      k * (nu * eps.xx + nu * eps.yy + (1.0 - nu) * eps.zz));
}

void require_matching_fg_constant(const AxisymPolyField& e) {
  const double fl = e.f.back();
  const double gl = e.g.back();
  const double tol = 1e-12 * std::max(e.coefficient_scale(), 1e-300);
  if (std::abs(fl - gl) > tol)
    throw std::invalid_argument(
        "axisym: constant terms of eps*_rr and eps*_tt differ; the governing "
        "equation would acquire a 1/r driving term at the axis");
}

}  // namespace

AxisymPolyField AxisymPolyField::zeros(int l, double R) {
  if (l < 2) throw std::invalid_argument("AxisymPolyField: order_l must be >= 2");
  if (!(R > 0.0)) throw std::invalid_argument("AxisymPolyField: radius must be > 0");
  AxisymPolyField e;
  e.order_l = l;
  e.radius = R;
  e.f.assign(l, 0.0);
  e.g.assign(l, 0.0);
  e.h.assign(l, 0.0);
  return e;
}

void AxisymPolyField::validate() const {
  if (order_l < 2) throw std::invalid_argument("AxisymPolyField: order_l < 2");
  if (!(radius > 0.0)) throw std::invalid_argument("AxisymPolyField: radius <= 0");
  const size_t l = static_cast<size_t>(order_l);
  if (f.size() != l || g.size() != l || h.size() != l)
    throw std::invalid_argument("AxisymPolyField: coefficient count != order_l");
}

double AxisymPolyField::eval_rr(double r) const { return eval_desc(f, r); }
double AxisymPolyField::eval_tt(double r) const { return eval_desc(g, r); }
double AxisymPolyField::eval_zz(double r) const { return eval_desc(h, r); }

AxisymPolyField& AxisymPolyField::operator+=(const AxisymPolyField& o) {
  if (order_l != o.order_l || radius != o.radius)
    throw std::invalid_argument("AxisymPolyField: incompatible operands");
  for (int i = 0; i < order_l; ++i) {
    f[i] += o.f[i];
    g[i] += o.g[i];
    h[i] += o.h[i];
  }
  return *this;
}

AxisymPolyField& AxisymPolyField::operator-=(const AxisymPolyField& o) {
  if (order_l != o.order_l || radius != o.radius)
    throw std::invalid_argument("AxisymPolyField: incompatible operands");
  for (int i = 0; i < order_l; ++i) {
    f[i] -= o.f[i];
    g[i] -= o.g[i];
    h[i] -= o.h[i];
  }
  return *this;
}

AxisymPolyField& AxisymPolyField::operator*=(double s) {
  for (int i = 0; i < order_l; ++i) {
    f[i] *= s;
    g[i] *= s;
    h[i] *= s;
  }
  return *this;
}

double AxisymPolyField::coefficient_scale() const {
  double scale = 0.0, rp = 1.0;
  for (int i = order_l; i >= 1; --i) {
    scale = std::max({scale, std::abs(f[i - 1]) * rp, std::abs(g[i - 1]) * rp,
                      std::abs(h[i - 1]) * rp});
    rp *= radius;
  }
  return scale;
}

AxisymPolyField make_null_field(int l, double R, const std::vector<double>& g,
                                double axial_const) {
  if (static_cast<int>(g.size()) != l)
    throw std::invalid_argument("make_null_field: need l hoop coefficients");
  AxisymPolyField e = AxisymPolyField::zeros(l, R);
  e.g = g;
  // eps*_rr = d(r eps*_tt)/dr term by term: r^(l-i) picks up (l-i+1).
  for (int i = 1; i <= l; ++i) e.f[i - 1] = (l - i + 1) * g[i - 1];
  e.h.back() = axial_const;
  return e;
}

double AxisymStressProfile::max_abs_stress() const {
  double m = 0.0;
  for (size_t k = 0; k < r.size(); ++k)
    m = std::max({m, std::abs(sigma_rr[k]), std::abs(sigma_tt[k]),
                  std::abs(sigma_zz[k])});
  return m;
}

std::vector<double> build_rhs(const AxisymPolyField& e, const ElasticModel& m) {
  e.validate();
  require_matching_fg_constant(e);
  const int l = e.order_l;
  const double nu = m.poisson_ratio;
  const double c1 = nu / (1.0 - nu);
  const double c2 = (1.0 - 2.0 * nu) / (1.0 - nu);
  std::vector<double> b(l - 1, 0.0);
  for (int i = 1; i <= l - 1; ++i) {
    const double fi = e.f[i - 1], gi = e.g[i - 1], hi = e.h[i - 1];
    b[i - 1] = (l - i) * (fi + c1 * (gi + hi)) + c2 * (fi - gi);
  }
  return b;
}

std::vector<double> particular_solution(const std::vector<double>& b, int l) {
  if (l < 2) throw std::invalid_argument("particular_solution: l must be >= 2");
  if (static_cast<int>(b.size()) != l - 1)
    throw std::invalid_argument("particular_solution: need l-1 coefficients");
  std::vector<double> Up(l + 1, 0.0);
  for (int i = 1; i <= l - 1; ++i) {
    const int mpow = l + 1 - i;  // >= 2, so the denominator never vanishes
    Up[i - 1] = b[i - 1] / (static_cast<double>(mpow) * mpow - 1.0);
  }
  return Up;
}

std::pair<double, double> solve_constants(const AxisymPolyField& e,
                                          const std::vector<double>& Up,
                                          const ElasticModel& m) {
  e.validate();
  const int l = e.order_l;
  if (static_cast<int>(Up.size()) != l + 1)
    throw std::invalid_argument("solve_constants: Up must have l+1 coefficients");
  const double nu = m.poisson_ratio;
  if (nu == 0.0)
    throw std::invalid_argument(
        "solve_constants: nu = 0 is not supported (the axial balance "
        "normalization carries a 1/nu factor)");
  const double R = e.radius;

  // dUp/dr and Up/r as descending polynomials of length l (constant 1/r and
  // r^0 terms are absent because Up has no r^1 or r^0 coefficients).
  std::vector<double> dUp(l, 0.0), Up_over_r(l, 0.0);
  for (int i = 1; i <= l; ++i) {
    dUp[i - 1] = Up[i - 1] * (l + 1 - i);
    Up_over_r[i - 1] = Up[i - 1];
  }

  // Surface traction condition:
  // alpha + nu eps_zz_bar =
  //   [(1-nu)(eps_rr - Up') + nu(eps_tt - Up/r) + nu eps_zz]_(r=R)
  const double rhs1 = (1.0 - nu) * (e.eval_rr(R) - eval_desc(dUp, R)) +
                      nu * (e.eval_tt(R) - eval_desc(Up_over_r, R)) +
                      nu * e.eval_zz(R);

  // Net-zero axial force, kept in the nu-multiplied (regular) form:
  // 2 nu alpha + (1-nu) eps_zz_bar = (2/R^2)[nu (I1 + I2) + (1-nu) I3]
  // with I1 = int r (eps_rr - Up'), I2 = int r (eps_tt - Up/r),
  // I3 = int r eps_zz, all exact polynomial integrals over [0, R].
  auto moment_integral = [&](const std::vector<double>& c) {
    // int_0^R r * poly dr for descending coefficients c (length n, highest
    // power n-1): sum c_j R^(p+2)/(p+2) with p the power of term j.
    const int n = static_cast<int>(c.size());
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const int p = n - 1 - j;
      sum += c[j] * std::pow(R, p + 2) / (p + 2);
    }
    return sum;
  };
  const double I1 = moment_integral(e.f) - moment_integral(dUp);
  const double I2 = moment_integral(e.g) - moment_integral(Up_over_r);
  const double I3 = moment_integral(e.h);
  const double rhs2 = 2.0 / (R * R) * (nu * (I1 + I2) + (1.0 - nu) * I3);

  // [ 1      nu   ] [alpha]   [rhs1]
  // [ 2 nu   1-nu ] [eps  ] = [rhs2]
  const double det = (1.0 - nu) - 2.0 * nu * nu;
  const double alpha = ((1.0 - nu) * rhs1 - nu * rhs2) / det;
  const double eps_zz_bar = (rhs2 - 2.0 * nu * rhs1) / det;
  return {alpha, eps_zz_bar};
}

AxisymSolution forward_solution(const AxisymPolyField& e, const ElasticModel& m) {
  AxisymSolution s;
  s.Up = particular_solution(build_rhs(e, m), e.order_l);
  std::tie(s.alpha, s.eps_zz_bar) = solve_constants(e, s.Up, m);
  return s;
}

SymTensor2 elastic_strain_at(const AxisymPolyField& e, const AxisymSolution& s,
                             double r) {
  const int l = e.order_l;
  std::vector<double> dUp(l, 0.0), Up_over_r(l, 0.0);
  for (int i = 1; i <= l; ++i) {
    dUp[i - 1] = s.Up[i - 1] * (l + 1 - i);
    Up_over_r[i - 1] = s.Up[i - 1];
  }
  SymTensor2 eps;
  eps.xx = s.alpha + eval_desc(dUp, r) - e.eval_rr(r);        // rr
  eps.yy = s.alpha + eval_desc(Up_over_r, r) - e.eval_tt(r);  // tt
  eps.zz = s.eps_zz_bar - e.eval_zz(r);                       // zz
  return eps;
}

AxisymStressProfile forward_stress(const AxisymPolyField& e,
                                   const ElasticModel& m,
                                   const std::vector<double>& radii) {
  e.validate();
  for (double r : radii)
    if (r < 0.0 || r > e.radius * (1.0 + 1e-12))
      throw std::invalid_argument("forward_stress: radius outside [0, R]");
  const AxisymSolution s = forward_solution(e, m);
  AxisymStressProfile p;
  p.r = radii;
  p.sigma_rr.resize(radii.size());
  p.sigma_tt.resize(radii.size());
  p.sigma_zz.resize(radii.size());
  for (size_t k = 0; k < radii.size(); ++k) {
    const SymTensor2 sig = axisym_stress(elastic_strain_at(e, s, radii[k]), m);
    p.sigma_rr[k] = sig.xx;
    p.sigma_tt[k] = sig.yy;
    p.sigma_zz[k] = sig.zz;
  }
  return p;
}

AxisymStressPolys stress_polynomials(const AxisymPolyField& e,
                                     const AxisymSolution& s,
                                     const ElasticModel& m) {
  const int l = e.order_l;
  const double nu = m.poisson_ratio;
  const double k = hooke_factor(m);
  // Elastic strain components as descending polynomials of length l.
  std::vector<double> err(l, 0.0), ett(l, 0.0), ezz(l, 0.0);
  for (int i = 1; i <= l; ++i) {
    err[i - 1] = s.Up[i - 1] * (l + 1 - i) - e.f[i - 1];
    ett[i - 1] = s.Up[i - 1] - e.g[i - 1];
    ezz[i - 1] = -e.h[i - 1];
  }
  err[l - 1] += s.alpha;
  ett[l - 1] += s.alpha;
  ezz[l - 1] += s.eps_zz_bar;

  AxisymStressPolys out;
  out.rr.resize(l);
  out.tt.resize(l);
  out.zz.resize(l);
  for (int i = 0; i < l; ++i) {
    out.rr[i] = k * ((1.0 - nu) * err[i] + nu * ett[i] + nu * ezz[i]);
    out.tt[i] = k * (nu * err[i] + (1.0 - nu) * ett[i] + nu * ezz[i]);
    out.zz[i] = k * (nu * err[i] + nu * ett[i] + (1.0 - nu) * ezz[i]);
  }
  return out;
}

std::pair<AxisymPolyField, AxisymPolyField> decompose_poly(
    const AxisymPolyField& e) {
  e.validate();
  require_matching_fg_constant(e);
  const int l = e.order_l;
  const double R = e.radius;

  AxisymPolyField sol = AxisymPolyField::zeros(l, R);
  // Pairwise split of (f_i, g_i) for i < l: the invisible part satisfies
  // f = (n+1) g, the complement g = (n+1) f, with n = l - i.
  for (int i = 1; i <= l - 1; ++i) {
    const double np1 = l - i + 1;
    const double denom = np1 * np1 - 1.0;
    const double fs = (np1 * e.g[i - 1] - e.f[i - 1]) / denom;
    sol.f[i - 1] = fs;
    sol.g[i - 1] = np1 * fs;
    sol.h[i - 1] = e.h[i - 1];
  }
  // Constant terms from the complement's boundary and axial-moment
  // conditions: eps_rr(R) = 0 and int r eps_zz dr = 0.
  double f_const = 0.0, h_const = 0.0, rp = R;
  for (int i = l - 1; i >= 1; --i) {
    f_const -= sol.f[i - 1] * rp;
    h_const -= 2.0 * sol.h[i - 1] * rp / (l - i + 2);
    rp *= R;
  }
  sol.f[l - 1] = f_const;
  sol.g[l - 1] = f_const;
  sol.h[l - 1] = h_const;

  AxisymPolyField null_part = e;
  null_part -= sol;
  return {null_part, sol};
}

namespace {

struct FitBasis {
  std::vector<AxisymPolyField> fields;
  std::vector<std::string> labels;
};

FitBasis build_fit_basis(int l, double R, const AxisymFitOptions& options) {
  FitBasis basis;
  auto add = [&](AxisymPolyField fld, std::string label) {
    basis.fields.push_back(std::move(fld));
    basis.labels.push_back(std::move(label));
  };
  const auto term = [&](int i) { return std::to_string(l - i); };  // power of r

  for (int i = 1; i <= l - 1; ++i) {
    if (options.zero_linear_terms && l - i == 1) continue;
    // Radial/hoop pair constrained to the stress-visible complement.
    AxisymPolyField fb = AxisymPolyField::zeros(l, R);
    fb.f[i - 1] = 1.0;
    fb.g[i - 1] = l - i + 1;
    fb.f[l - 1] = -std::pow(R, l - i);
    fb.g[l - 1] = fb.f[l - 1];
    add(std::move(fb), "f_r" + term(i));

    AxisymPolyField hb = AxisymPolyField::zeros(l, R);
    hb.h[i - 1] = 1.0;
    hb.h[l - 1] = -2.0 * std::pow(R, l - i) / (l - i + 2);
    add(std::move(hb), "h_r" + term(i));
  }
  if (!options.exclude_null) {
    // Add the invisible directions; the design matrix becomes
    // rank-deficient and the minimum-norm solution is reported.
    for (int i = 1; i <= l; ++i) {
      if (options.zero_linear_terms && l - i == 1) continue;
      AxisymPolyField nb = make_null_field(
          l, R,
          [&] {
            std::vector<double> g(l, 0.0);
            g[i - 1] = 1.0;
            return g;
          }(),
          0.0);
      add(std::move(nb), "null_g_r" + term(i));
    }
    AxisymPolyField ab = AxisymPolyField::zeros(l, R);
    ab.h[l - 1] = 1.0;
    add(std::move(ab), "null_h_const");
  }
  return basis;
}

}  // namespace

AxisymFitResult fit_stress(const AxisymStressProfile& p, int l, double R,
                           const ElasticModel& m,
                           const AxisymFitOptions& options) {
  if (p.size() == 0) throw std::invalid_argument("fit_stress: empty profile");
  FitBasis basis = build_fit_basis(l, R, options);
  const int np = static_cast<int>(basis.fields.size());
  const int rows = static_cast<int>(p.size()) * 3;
  if (rows < np)
    throw std::invalid_argument(
        "fit_stress: fewer stress samples than free coefficients");

  std::vector<double> weight(rows, 1.0);
  const bool weighted = options.use_uncertainty_weights && p.has_uncertainty();
  if (weighted) {
    for (size_t k = 0; k < p.size(); ++k) {
      weight[3 * k + 0] = 1.0 / p.u_rr[k];
      weight[3 * k + 1] = 1.0 / p.u_tt[k];
      weight[3 * k + 2] = 1.0 / p.u_zz[k];
    }
  }

  linalg::Matrix a(rows, np);
  for (int j = 0; j < np; ++j) {
    const AxisymStressProfile col = forward_stress(basis.fields[j], m, p.r);
    for (size_t k = 0; k < p.size(); ++k) {
      a(static_cast<int>(3 * k) + 0, j) = col.sigma_rr[k] * weight[3 * k + 0];
      a(static_cast<int>(3 * k) + 1, j) = col.sigma_tt[k] * weight[3 * k + 1];
      a(static_cast<int>(3 * k) + 2, j) = col.sigma_zz[k] * weight[3 * k + 2];
    }
  }
  std::vector<double> b(rows);
  for (size_t k = 0; k < p.size(); ++k) {
    b[3 * k + 0] = p.sigma_rr[k] * weight[3 * k + 0];
    b[3 * k + 1] = p.sigma_tt[k] * weight[3 * k + 1];
    b[3 * k + 2] = p.sigma_zz[k] * weight[3 * k + 2];
  }

  bool all_zero = true;
  for (double v : b)
    if (v != 0.0) all_zero = false;

  AxisymFitResult out;
  out.eigenstrain = AxisymPolyField::zeros(l, R);
  out.report.parameters = np;
  out.report.parameter_labels = basis.labels;
  if (all_zero) {
    out.report.parameter_values.assign(np, 0.0);
    out.report.parameter_std_errors.assign(np, 0.0);
    out.report.per_point_residual.assign(rows, 0.0);
    out.report.rank = np;
    out.report.condition = 1.0;
    return out;
  }

  const auto ls = linalg::solve_least_squares_scaled(a, b, 1e-10);
  for (int j = 0; j < np; ++j) out.eigenstrain += ls.x[j] * basis.fields[j];
  out.report.parameter_values = ls.x;
  out.report.residual_norm = ls.residual_norm;
  out.report.condition = ls.condition;
  out.report.rank = ls.rank;
  out.report.per_point_residual.resize(rows);
  for (int i = 0; i < rows; ++i)
    out.report.per_point_residual[i] = ls.residual[i] / weight[i];
  const int dof = rows - ls.rank;
  const double s2 =
      dof > 0 ? ls.residual_norm * ls.residual_norm / dof : 0.0;
  out.report.parameter_std_errors.resize(np);
  for (int j = 0; j < np; ++j)
    out.report.parameter_std_errors[j] = std::sqrt(ls.covariance_diag[j] * s2);
  if (ls.rank < np)
    out.report.warnings.push_back(
        "rank-deficient design matrix; minimum-norm solution returned");
  return out;
}

double D0Poly::eval(double r) const {
  const double t = radius > 0.0 ? r / radius : 0.0;
  double v = 0.0;
  for (size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

namespace {

// Hooke map from the three diagonal strains to the three diagonal stresses.
std::array<std::array<double, 3>, 3> hooke_matrix(const ElasticModel& m) {
  const double nu = m.poisson_ratio;
  const double k = hooke_factor(m);
  return {{{k * (1.0 - nu), k * nu, k * nu},
           {k * nu, k * (1.0 - nu), k * nu},
           {k * nu, k * nu, k * (1.0 - nu)}}};
}

}  // namespace

D0FitResult fit_with_d0(const LatticeProfile& lattice, int l, int d0_order,
                        double R, const ElasticModel& m,
                        const AxisymFitOptions& options) {
  const size_t n = lattice.size();
  if (n == 0) throw std::invalid_argument("fit_with_d0: empty profile");
  if (d0_order < 0) throw std::invalid_argument("fit_with_d0: d0_order < 0");
  for (int c = 0; c < 3; ++c)
    if (lattice.d[c].size() != n)
      throw std::invalid_argument("fit_with_d0: ragged lattice data");

  FitBasis basis = build_fit_basis(l, R, options);
  const int np = static_cast<int>(basis.fields.size());
  const int rows = static_cast<int>(n) * 3;
  const int nq = d0_order + 1;
  if (rows < np + nq)
    throw std::invalid_argument(
        "fit_with_d0: fewer measurements than free coefficients");

  const auto hooke = hooke_matrix(m);

  // Fixed per-row weights from lattice uncertainties propagated through
  // Hooke's law at the nominal spacing scale.
  double d_mean = 0.0;
  for (int c = 0; c < 3; ++c)
    d_mean += std::accumulate(lattice.d[c].begin(), lattice.d[c].end(), 0.0);
  d_mean /= (3.0 * n);

  std::vector<double> weight(rows, 1.0);
  if (options.use_uncertainty_weights && lattice.has_uncertainty()) {
    for (size_t k = 0; k < n; ++k)
      for (int c = 0; c < 3; ++c) {
        double var = 0.0;
        for (int s = 0; s < 3; ++s) {
          const double dsde = hooke[c][s] * lattice.u[s][k] / d_mean;
          var += dsde * dsde;
        }
        weight[3 * k + c] = 1.0 / std::sqrt(var);
      }
  }

  // Weighted design matrix of the linear eigenstrain subproblem; constant
  // over the d0 iteration, so its orthogonal projector is fixed.
  linalg::Matrix a(rows, np);
  for (int j = 0; j < np; ++j) {
    const AxisymStressProfile col = forward_stress(basis.fields[j], m, lattice.r);
    for (size_t k = 0; k < n; ++k) {
      a(static_cast<int>(3 * k) + 0, j) = col.sigma_rr[k] * weight[3 * k + 0];
      a(static_cast<int>(3 * k) + 1, j) = col.sigma_tt[k] * weight[3 * k + 1];
      a(static_cast<int>(3 * k) + 2, j) = col.sigma_zz[k] * weight[3 * k + 2];
    }
  }
  const linalg::Svd svd = linalg::svd_jacobi(a);
  const double smax = svd.s.front();
  int rank = 0;
  for (double s : svd.s)
    if (s > 1e-10 * smax) ++rank;

  auto project_out_range = [&](std::vector<double> y) {
    // y <- y - U U^T y over the kept singular directions.
    for (int j = 0; j < rank; ++j) {
      double dot = 0.0;
      for (int i = 0; i < rows; ++i) dot += svd.u(i, j) * y[i];
      for (int i = 0; i < rows; ++i) y[i] -= dot * svd.u(i, j);
    }
    return y;
  };

  auto d0_at = [&](const std::vector<double>& q, double r) {
    const double t = r / R;
    double v = 0.0;
    for (size_t j = q.size(); j-- > 0;) v = v * t + q[j];
    return v;
  };

  // Weighted measured-stress vector for a given d0 polynomial.
  auto measured = [&](const std::vector<double>& q) {
    std::vector<double> y(rows);
    for (size_t k = 0; k < n; ++k) {
      const double d0 = d0_at(q, lattice.r[k]);
      double eps[3];
      for (int c = 0; c < 3; ++c) eps[c] = (lattice.d[c][k] - d0) / d0;
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int e = 0; e < 3; ++e) s += hooke[c][e] * eps[e];
        y[3 * k + c] = s * weight[3 * k + c];
      }
    }
    return y;
  };

  auto residual_fn = [&](const std::vector<double>& q) {
    return project_out_range(measured(q));
  };

  auto jacobian_fn = [&](const std::vector<double>& q) {
    linalg::Matrix jac(rows, nq);
    for (int jq = 0; jq < nq; ++jq) {
      std::vector<double> col(rows, 0.0);
      for (size_t k = 0; k < n; ++k) {
        const double d0 = d0_at(q, lattice.r[k]);
        const double tj = std::pow(lattice.r[k] / R, jq);
        double deps[3];
        for (int c = 0; c < 3; ++c)
          deps[c] = -lattice.d[c][k] * tj / (d0 * d0);
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int e = 0; e < 3; ++e) s += hooke[c][e] * deps[e];
          col[3 * k + c] = s * weight[3 * k + c];
        }
      }
      col = project_out_range(std::move(col));
      for (int i = 0; i < rows; ++i) jac(i, jq) = col[i];
    }
    return jac;
  };

  auto validity_fn = [&](const std::vector<double>& q) {
    for (int s = 0; s <= 100; ++s)
      if (d0_at(q, R * s / 100.0) <= 0.0) return false;
    return true;
  };

  std::vector<double> q0(nq, 0.0);
  q0[0] = d_mean;

  linalg::LmResult lm = linalg::levenberg_marquardt(residual_fn, jacobian_fn,
                                                    q0, validity_fn, {});

  D0FitResult out;
  out.converged = lm.converged;
  out.iterations = lm.iterations;
  out.d0.order = d0_order;
  out.d0.c = lm.x;
  out.d0.d0_ref = d_mean;
  out.d0.radius = R;

  // Exact linear solve at the final d0 for the eigenstrain coefficients.
  const std::vector<double> y = measured(lm.x);
  const auto ls = linalg::solve_least_squares_scaled(a, y, 1e-10);
  out.eigenstrain = AxisymPolyField::zeros(l, R);
  for (int j = 0; j < np; ++j) out.eigenstrain += ls.x[j] * basis.fields[j];

  out.report.parameters = np + nq;
  out.report.parameter_labels = basis.labels;
  for (int jq = 0; jq < nq; ++jq)
    out.report.parameter_labels.push_back("d0_c" + std::to_string(jq));
  out.report.parameter_values = ls.x;
  out.report.parameter_values.insert(out.report.parameter_values.end(),
                                     lm.x.begin(), lm.x.end());
  out.report.parameter_std_errors.assign(out.report.parameters, 0.0);
  out.report.residual_norm = lm.residual_norm;
  out.report.condition = ls.condition;
  out.report.rank = ls.rank;
  out.report.per_point_residual.resize(rows);
  for (int i = 0; i < rows; ++i)
    out.report.per_point_residual[i] = ls.residual[i] / weight[i];
  if (!lm.converged)
    out.report.warnings.push_back("d0 iteration did not converge: " + lm.message);
  if (ls.rank < np)
    out.report.warnings.push_back(
        "rank-deficient design matrix; minimum-norm solution returned");
  return out;
}

}  // namespace restress::axisym
