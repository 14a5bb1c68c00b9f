#ifndef RESTRESS_AXISYM_HPP
#define RESTRESS_AXISYM_HPP

#include <string>
#include <vector>

#include "restress/tensor.hpp"

namespace restress::axisym {

/// Polynomial eigenstrain profile on a long cylinder of radius R.  The three
/// diagonal components are polynomials of order l-1 in r, stored in
/// descending powers: f[i-1] multiplies r^(l-i) for i = 1..l, so f.back() is
/// the constant term.  Shear components are zero by assumption.
struct AxisymPolyField {
  int order_l = 2;     // number of coefficients per component, >= 2
  double radius = 1.0; // meters
  std::vector<double> f;  // eps*_rr
  std::vector<double> g;  // eps*_tt
  std::vector<double> h;  // eps*_zz

  static AxisymPolyField zeros(int l, double R);

  void validate() const;
  double eval_rr(double r) const;
  double eval_tt(double r) const;
  double eval_zz(double r) const;

  AxisymPolyField& operator+=(const AxisymPolyField& o);
  AxisymPolyField& operator-=(const AxisymPolyField& o);
  AxisymPolyField& operator*=(double s);
  friend AxisymPolyField operator+(AxisymPolyField a, const AxisymPolyField& b) { return a += b; }
  friend AxisymPolyField operator-(AxisymPolyField a, const AxisymPolyField& b) { return a -= b; }
  friend AxisymPolyField operator*(double s, AxisymPolyField a) { return a *= s; }

  double coefficient_scale() const;  // max |coef| * R^power, for tolerances
};

/// Null-space eigenstrain built from a hoop profile: eps*_tt has the given
/// descending coefficients, eps*_rr = d(r eps*_tt)/dr, eps*_zz = axial_const.
/// Produces zero stress for any arguments.
AxisymPolyField make_null_field(int l, double R, const std::vector<double>& g,
                                double axial_const);

/// Measured (or synthesized) stress profile.  Radii in meters, stresses in
/// Pa; uncertainties optional per component (empty = none).
struct AxisymStressProfile {
  std::vector<double> r;
  std::vector<double> sigma_rr, sigma_tt, sigma_zz;
  std::vector<double> u_rr, u_tt, u_zz;

  size_t size() const { return r.size(); }
  bool has_uncertainty() const { return !u_rr.empty(); }
  double max_abs_stress() const;
};

/// Closed-form solution data for the radial displacement
/// U_r = alpha r + sum_i Up[i-1] r^(l+1-i); beta (the 1/r homogeneous
/// coefficient) is identically zero by the center continuity condition.
struct AxisymSolution {
  std::vector<double> Up;  // particular coefficients, descending, length l+1
  double alpha = 0.0;
  double eps_zz_bar = 0.0;
};

/// Right-hand side coefficients b_i of the governing radial ODE,
/// b = sum_{i=1..l-1} b_i r^(l-1-i).  Requires f_l == g_l; otherwise the
/// (eps_rr - eps_tt)/r term is singular at the axis.
std::vector<double> build_rhs(const AxisymPolyField& e, const ElasticModel& m);

/// Particular solution coefficients alpha_i = b_i / ((l+1-i)^2 - 1),
/// alpha_l = alpha_{l+1} = 0.  The denominator follows from substituting
/// r^m with m = l+1-i into U'' + U'/r - U/r^2, which yields m^2 - 1.
std::vector<double> particular_solution(const std::vector<double>& b, int l);

/// Homogeneous coefficient and mean axial strain from the surface
/// zero-traction and net-zero-axial-force conditions.
std::pair<double, double> solve_constants(const AxisymPolyField& e,
                                          const std::vector<double>& Up,
                                          const ElasticModel& m);

AxisymSolution forward_solution(const AxisymPolyField& e, const ElasticModel& m);

/// Elastic strain components at radius r for a computed solution.
SymTensor2 elastic_strain_at(const AxisymPolyField& e, const AxisymSolution& s,
                             double r);

/// Stress profile at the requested radii (each in [0, R]).
AxisymStressProfile forward_stress(const AxisymPolyField& e,
                                   const ElasticModel& m,
                                   const std::vector<double>& radii);

/// The three stress components of a solution as exact polynomials in r
/// (descending coefficients, length l).  Lets callers verify equilibrium
/// and the axial balance by polynomial algebra instead of differencing.
struct AxisymStressPolys {
  std::vector<double> rr, tt, zz;
};
AxisymStressPolys stress_polynomials(const AxisymPolyField& e,
                                     const AxisymSolution& s,
                                     const ElasticModel& m);

/// Split into the stress-invisible part (a symmetric-gradient field plus a
/// constant axial strain) and its orthogonal complement under the weighted
/// L2 product 2*pi int r a:b dr.  Parts re-sum to e exactly.  Requires
/// f_l == g_l (same condition as the forward problem).
std::pair<AxisymPolyField, AxisymPolyField> decompose_poly(const AxisymPolyField& e);

struct AxisymFitOptions {
  bool exclude_null = true;       // restrict to the orthogonal complement
  bool zero_linear_terms = true;  // drop r^1 coefficients
  bool use_uncertainty_weights = true;
};

struct FitDiagnostics {
  double residual_norm = 0.0;          // weighted stress-space residual
  std::vector<double> per_point_residual;  // per (sample, component), Pa
  double condition = 0.0;
  int rank = 0;
  int parameters = 0;
  std::vector<std::string> parameter_labels;
  std::vector<double> parameter_values;
  std::vector<double> parameter_std_errors;
  std::vector<std::string> warnings;
};

struct AxisymFitResult {
  AxisymPolyField eigenstrain;
  FitDiagnostics report;
};

/// Linear least-squares fit of polynomial eigenstrain coefficients to a
/// measured stress profile.  Stress is linear in the coefficients, so this
/// is one orthogonal-factorization solve.
AxisymFitResult fit_stress(const AxisymStressProfile& p, int l, double R,
                           const ElasticModel& m,
                           const AxisymFitOptions& options = {});

/// Variable reference lattice spacing d0(r), stored in Angstrom as
/// coefficients of ascending powers of (r/R): d0(r) = sum_j c[j] (r/R)^j.
struct D0Poly {
  int order = 0;
  std::vector<double> c;
  double d0_ref = 0.0;  // constant reference the input strains assumed
  double radius = 0.0;

  double eval(double r) const;
};

/// Lattice-spacing profile: d per direction (rr, tt, zz) in Angstrom at each
/// radius, optional uncertainties in Angstrom.
struct LatticeProfile {
  std::vector<double> r;                    // meters
  std::array<std::vector<double>, 3> d;     // [rr, tt, zz]
  std::array<std::vector<double>, 3> u;     // optional, empty = none
  size_t size() const { return r.size(); }
  bool has_uncertainty() const { return !u[0].empty(); }
};

struct D0FitResult {
  AxisymPolyField eigenstrain;
  D0Poly d0;
  FitDiagnostics report;
  bool converged = false;
  int iterations = 0;
};

/// Joint eigenstrain / variable-d0 fit.  Measured strain is
/// (d_c(r) - d0(r)) / d0(r); the residual is formed in stress space.  The
/// d0 coefficients enter nonlinearly and are iterated by Levenberg-Marquardt
/// with the linear eigenstrain subproblem solved exactly at each step.
D0FitResult fit_with_d0(const LatticeProfile& lattice, int l, int d0_order,
                        double R, const ElasticModel& m,
                        const AxisymFitOptions& options = {});

}  // namespace restress::axisym

#endif
