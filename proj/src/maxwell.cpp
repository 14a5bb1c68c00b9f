#include "restress/maxwell.hpp"

#include <cmath>
#include <stdexcept>

#include "restress/linalg.hpp"

namespace restress::maxwell {

MaxwellPotential& MaxwellPotential::operator+=(const MaxwellPotential& o) {
  if (half_size != o.half_size)
    throw std::invalid_argument("MaxwellPotential: mismatched cube size");
  par += o.par;
  perp += o.perp;
  return *this;
}

MaxwellPotential& MaxwellPotential::operator*=(double s) {
  par = par * s;
  perp = perp * s;
  return *this;
}

SymTensor2 StressPolynomials::eval(const std::array<double, 3>& x) const {
  const double X = x[0] / half_size, Y = x[1] / half_size, Z = x[2] / half_size;
  SymTensor2 out;
  for (int k = 0; k < 6; ++k) out[k] = comp[k].eval(X, Y, Z);
  return out;
}

StressPolynomials stress_polynomials(const MaxwellPotential& p) {
  const double inv_l2 = 1.0 / (p.half_size * p.half_size);
  auto d2 = [](const Poly3& f, int a, int b) {
    return f.derivative(a).derivative(b);
  };
  StressPolynomials s;
  s.half_size = p.half_size;
  s.comp[0] = (d2(p.par, 2, 2) + d2(p.perp, 1, 1)) * inv_l2;   // xx
  s.comp[1] = (d2(p.perp, 0, 0) + d2(p.par, 2, 2)) * inv_l2;   // yy
  s.comp[2] = (d2(p.par, 1, 1) + d2(p.par, 0, 0)) * inv_l2;    // zz
  s.comp[3] = d2(p.perp, 0, 1) * -inv_l2;                      // xy
  s.comp[4] = d2(p.par, 1, 2) * -inv_l2;                       // yz
  s.comp[5] = d2(p.par, 0, 2) * -inv_l2;                       // xz
  return s;
}

SymTensor2 stress_from_potential(const MaxwellPotential& p,
                                 const std::array<double, 3>& x) {
  return stress_polynomials(p).eval(x);
}

Poly3 boundary_factor() {
  // (t^2 - 1)^2 = t^4 - 2 t^2 + 1 in each variable.
  auto quartic = [](int axis) {
    Poly3 p(axis == 0 ? 5 : 1, axis == 1 ? 5 : 1, axis == 2 ? 5 : 1);
    const int sel[3] = {axis == 0 ? 4 : 0, axis == 1 ? 4 : 0, axis == 2 ? 4 : 0};
    p.set_coef(sel[0], sel[1], sel[2], 1.0);
    p.set_coef(sel[0] / 2, sel[1] / 2, sel[2] / 2, -2.0);
    p.set_coef(0, 0, 0, p.coef(0, 0, 0) + 1.0);
    return p;
  };
  return quartic(0) * quartic(1) * quartic(2);
}

namespace {

// Plane terms e1^a e2^b in graded order: 1, e1, e1^2, e2, e1^3, e1 e2, ...
std::vector<std::pair<int, int>> plane_term_exponents(int count) {
  std::vector<std::pair<int, int>> terms;
  for (int grade = 0; static_cast<int>(terms.size()) < count; ++grade)
    for (int b = 0; 2 * b <= grade && static_cast<int>(terms.size()) < count; ++b)
      terms.emplace_back(grade - 2 * b, b);
  return terms;
}

Poly3 plane_term(int a, int b) {
  Poly3 e1(3, 3, 1);
  e1.set_coef(2, 0, 0, 1.0);
  e1.set_coef(0, 2, 0, 1.0);
  Poly3 e2 = Poly3::monomial(2, 2, 0);
  Poly3 out = Poly3::constant(1.0);
  for (int i = 0; i < a; ++i) out = out * e1;
  for (int i = 0; i < b; ++i) out = out * e2;
  return out;
}

}  // namespace

std::vector<MaxwellPotential> build_symmetric_basis(int z_order,
                                                    int plane_terms, double L) {
  if (z_order < 1 || plane_terms < 1)
    throw std::invalid_argument("build_symmetric_basis: orders must be >= 1");
  if (!(L > 0.0))
    throw std::invalid_argument("build_symmetric_basis: half size must be > 0");
  const Poly3 phi = boundary_factor();
  const auto exps = plane_term_exponents(plane_terms);
  std::vector<MaxwellPotential> basis;
  basis.reserve(static_cast<size_t>(2 * z_order * plane_terms));
  for (int which = 0; which < 2; ++which) {  // a-coefficients first, then b
    for (int iz = 0; iz < z_order; ++iz) {
      const Poly3 zf = Poly3::monomial(0, 0, 2 * iz);
      for (const auto& [pa, pb] : exps) {
        MaxwellPotential p;
        p.half_size = L;
        const Poly3 term = phi * zf * plane_term(pa, pb);
        if (which == 0)
          p.par = term;
        else
          p.perp = term;
        basis.push_back(std::move(p));
      }
    }
  }
  return basis;
}

std::vector<std::string> basis_labels(int z_order, int plane_terms) {
  std::vector<std::string> labels;
  for (int which = 0; which < 2; ++which)
    for (int iz = 0; iz < z_order; ++iz)
      for (int jp = 0; jp < plane_terms; ++jp)
        labels.push_back(std::string(which == 0 ? "a_" : "b_") +
                         std::to_string(iz) + std::to_string(jp));
  return labels;
}

MaxwellFitResult fit_stress_field(const StressSampleSet& samples,
                                  const std::vector<MaxwellPotential>& basis,
                                  bool use_uncertainty_weights) {
  const size_t n = samples.size();
  if (n == 0) throw std::invalid_argument("fit_stress_field: no samples");
  if (basis.empty()) throw std::invalid_argument("fit_stress_field: empty basis");
  if (samples.sigma.size() != n)
    throw std::invalid_argument("fit_stress_field: ragged sample set");

  const int nb = static_cast<int>(basis.size());
  const int rows = static_cast<int>(n) * 6;

  std::vector<double> weight(rows, 1.0);
  if (use_uncertainty_weights && !samples.uncertainty.empty()) {
    for (size_t k = 0; k < n; ++k)
      for (int c = 0; c < 6; ++c)
        weight[6 * k + c] = 1.0 / samples.uncertainty[k][c];
  }

  linalg::Matrix a(rows, nb);
  for (int j = 0; j < nb; ++j) {
    const StressPolynomials sp = stress_polynomials(basis[j]);
    for (size_t k = 0; k < n; ++k) {
      const SymTensor2 s = sp.eval(samples.points[k]);
      for (int c = 0; c < 6; ++c)
        a(static_cast<int>(6 * k) + c, j) = s[c] * weight[6 * k + c];
    }
  }
  std::vector<double> b(rows);
  for (size_t k = 0; k < n; ++k)
    for (int c = 0; c < 6; ++c)
      b[6 * k + c] = samples.sigma[k][c] * weight[6 * k + c];

  const auto ls = linalg::solve_least_squares(a, b, 1e-10);

  MaxwellFitResult out;
  out.coefficients = ls.x;
  out.fitted.half_size = basis.front().half_size;
  for (int j = 0; j < nb; ++j) {
    MaxwellPotential scaled = basis[j];
    scaled *= ls.x[j];
    out.fitted += scaled;
  }
  out.report.residual_norm = ls.residual_norm;
  out.report.condition = ls.condition;
  out.report.rank = ls.rank;
  for (int c = 0; c < 6; ++c) {
    double s = 0.0;
    for (size_t k = 0; k < n; ++k) {
      const double r = ls.residual[6 * k + c] / weight[6 * k + c];
      s += r * r;
    }
    out.report.component_rms_residual[c] = std::sqrt(s / n);
  }
  if (ls.rank < nb)
    out.report.warnings.push_back(
        "rank-deficient design matrix; minimum-norm solution returned");
  return out;
}

FieldDiagnostics field_diagnostics(const MaxwellPotential& p, int n_grid) {
  if (n_grid < 4)
    throw std::invalid_argument("field_diagnostics: n_grid must be >= 4");
  const StressPolynomials sp = stress_polynomials(p);
  const double inv_l = 1.0 / p.half_size;

  // Analytic divergence rows (third derivatives of the potential).
  const Poly3 div[3] = {
      (sp.comp[0].derivative(0) + sp.comp[3].derivative(1) +
       sp.comp[5].derivative(2)) * inv_l,
      (sp.comp[3].derivative(0) + sp.comp[1].derivative(1) +
       sp.comp[4].derivative(2)) * inv_l,
      (sp.comp[5].derivative(0) + sp.comp[4].derivative(1) +
       sp.comp[2].derivative(2)) * inv_l};

  FieldDiagnostics out;
  auto coord = [&](int i) { return -1.0 + 2.0 * i / (n_grid - 1); };
  for (int k = 0; k < n_grid; ++k)
    for (int j = 0; j < n_grid; ++j)
      for (int i = 0; i < n_grid; ++i) {
        const double X = coord(i), Y = coord(j), Z = coord(k);
        for (int c = 0; c < 6; ++c)
          out.max_stress =
              std::max(out.max_stress, std::abs(sp.comp[c].eval(X, Y, Z)));
        for (int c = 0; c < 3; ++c)
          out.max_divergence =
              std::max(out.max_divergence, std::abs(div[c].eval(X, Y, Z)));
      }

  // Face tractions: on x = +-1 the traction components are (xx, xy, xz), etc.
  auto face_traction = [&](int axis, double side) {
    double m = 0.0;
    for (int j = 0; j < n_grid; ++j)
      for (int i = 0; i < n_grid; ++i) {
        double X[3];
        X[axis] = side;
        X[(axis + 1) % 3] = coord(i);
        X[(axis + 2) % 3] = coord(j);
        SymTensor2 s;
        for (int c = 0; c < 6; ++c) s[c] = sp.comp[c].eval(X[0], X[1], X[2]);
        std::array<double, 3> nvec{0.0, 0.0, 0.0};
        nvec[axis] = side;
        for (double t : s.dot(nvec)) m = std::max(m, std::abs(t));
      }
    return m;
  };
  for (int axis = 0; axis < 3; ++axis)
    for (double side : {-1.0, 1.0})
      out.max_boundary_traction =
          std::max(out.max_boundary_traction, face_traction(axis, side));

  // Exact mean over the cube: normalized integral / normalized volume.
  for (int c = 0; c < 6; ++c)
    out.mean[c] = sp.comp[c].integral_unit_cube() / 8.0;
  return out;
}

}  // namespace restress::maxwell
