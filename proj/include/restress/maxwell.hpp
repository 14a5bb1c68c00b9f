#ifndef RESTRESS_MAXWELL_HPP
#define RESTRESS_MAXWELL_HPP

#include <string>
#include <vector>

#include "restress/poly3.hpp"
#include "restress/tensor.hpp"

namespace restress::maxwell {

/// Diagonal Beltrami (Maxwell) potential on the cube [-L,L]^3 with the
/// in-plane symmetry Lambda_x = Lambda_y.  The two scalar potentials are
/// polynomials in the normalized coordinates (x/L, y/L, z/L); the double
/// curl of the diagonal potential yields a divergence-free symmetric field.
struct MaxwellPotential {
  double half_size = 1.0;  // L, meters
  Poly3 par;               // Lambda_parallel = Lambda_x = Lambda_y
  Poly3 perp;              // Lambda_perp = Lambda_z

  MaxwellPotential& operator+=(const MaxwellPotential& o);
  MaxwellPotential& operator*=(double s);
};

/// Pointwise stress samples inside the cube.  Values in Pa, points in
/// meters; uncertainties optional (empty = none), component order
/// (xx, yy, zz, xy, yz, xz).
struct StressSampleSet {
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<double, 6>> sigma;
  std::vector<std::array<double, 6>> uncertainty;

  size_t size() const { return points.size(); }
};

/// The six analytic stress polynomials of a potential (physical second
/// derivatives, so values are in the potential's units divided by L^2).
struct StressPolynomials {
  double half_size = 1.0;
  std::array<Poly3, 6> comp;  // (xx, yy, zz, xy, yz, xz)

  SymTensor2 eval(const std::array<double, 3>& x) const;
};

StressPolynomials stress_polynomials(const MaxwellPotential& p);

/// sigma(x) from the double-curl operator applied to the diagonal potential:
///   sigma_xx =  d2(Lambda_par)/dz2 + d2(Lambda_perp)/dy2
///   sigma_yy =  d2(Lambda_perp)/dx2 + d2(Lambda_par)/dz2
///   sigma_zz =  d2(Lambda_par)/dy2 + d2(Lambda_par)/dx2
///   sigma_xy = -d2(Lambda_perp)/dxdy
///   sigma_yz = -d2(Lambda_par)/dydz
///   sigma_xz = -d2(Lambda_par)/dxdz
/// computed by exact polynomial differentiation.
SymTensor2 stress_from_potential(const MaxwellPotential& p,
                                 const std::array<double, 3>& x);

/// The boundary factor ((x/L)^2-1)^2 ((y/L)^2-1)^2 ((z/L)^2-1)^2, degree 4
/// per variable, which forces zero traction on all faces.
Poly3 boundary_factor();

/// One basis element per (potential, z-power, plane-term) triple:
/// Phi * (z/L)^(2*iz) * {1, e1, e1^2, e2, e1^3, e1*e2, e1^4, ...} with
/// e1 = (x^2+y^2)/L^2 and e2 = x^2 y^2 / L^4, placed in Lambda_par or
/// Lambda_perp.  Count = 2 * z_order * plane_terms.
std::vector<MaxwellPotential> build_symmetric_basis(int z_order,
                                                    int plane_terms, double L);

std::vector<std::string> basis_labels(int z_order, int plane_terms);

/// The 24-coefficient configuration: z powers {0, 2, 4} and plane terms
/// {1, e1, e1^2, e2}, i.e. maximum individual order 8 on top of the
/// boundary factor.
inline std::vector<MaxwellPotential> build_cube24_basis(double L) {
  return build_symmetric_basis(3, 4, L);
}

struct MaxwellFitReport {
  double residual_norm = 0.0;
  std::array<double, 6> component_rms_residual{};
  double condition = 0.0;
  int rank = 0;
  std::vector<std::string> warnings;
};

struct MaxwellFitResult {
  std::vector<double> coefficients;
  MaxwellPotential fitted;
  MaxwellFitReport report;
};

/// Least squares over the basis stress fields evaluated at the sample
/// points (design matrix 6N x n_basis), solved by SVD with relative
/// truncation 1e-10 (the minimum-norm pseudo-inverse solution).
MaxwellFitResult fit_stress_field(const StressSampleSet& samples,
                                  const std::vector<MaxwellPotential>& basis,
                                  bool use_uncertainty_weights = true);

struct FieldDiagnostics {
  double max_divergence = 0.0;        // max |Div sigma| over the grid, Pa/m
  double max_boundary_traction = 0.0; // max |sigma.n| over the six faces, Pa
  SymTensor2 mean;                    // exact volume average
  double max_stress = 0.0;            // max |sigma| component over the grid
};

/// Analytic divergence (third derivatives), face tractions and the exact
/// mean over an n_grid^3 sample.
FieldDiagnostics field_diagnostics(const MaxwellPotential& p, int n_grid);

}  // namespace restress::maxwell

#endif
