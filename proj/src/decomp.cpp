#include "restress/decomp.hpp"

#include <cmath>

namespace restress::decomp {

namespace {

// Largest node-averaged traction magnitude over the boundary faces.
double max_boundary_traction(const BoxMesh& mesh, const GridTensorField& field) {
  const GridTensorField nodal = average_to_nodes(mesh, field);
  double m = 0.0;
  for (int k = 0; k <= mesh.n[2]; ++k)
    for (int j = 0; j <= mesh.n[1]; ++j)
      for (int i = 0; i <= mesh.n[0]; ++i) {
        const int idx[3] = {i, j, k};
        const SymTensor2& t = nodal.values[mesh.node_index(i, j, k)];
        for (int a = 0; a < 3; ++a) {
          if (idx[a] != 0 && idx[a] != mesh.n[a]) continue;
          std::array<double, 3> n{0.0, 0.0, 0.0};
          n[a] = idx[a] == 0 ? -1.0 : 1.0;
          for (double c : t.dot(n)) m = std::max(m, std::abs(c));
        }
      }
  return m;
}

}  // namespace

GridTensorField trivial_solution(const GridTensorField& sigma,
                                 const ElasticModel& m, const BoxMesh& mesh,
                                 TrivialCheck* check) {
  if (sigma.values.size() != sigma.expected_size(mesh))
    throw std::invalid_argument("trivial_solution: field does not match mesh");
  const double scale = sigma.max_abs();
  if (check) {
    *check = {};
    if (scale > 0.0) {
      check->mean_stress_rel = mean_stress(mesh, sigma).max_abs() / scale;
      check->boundary_traction_rel = max_boundary_traction(mesh, sigma) / scale;
      if (check->mean_stress_rel > 1e-6)
        check->warnings.push_back(
            "input stress has nonzero volume mean; not self-equilibrated");
      if (check->boundary_traction_rel > 1e-6)
        check->warnings.push_back(
            "input stress carries boundary traction; zero-flux assumption "
            "violated");
    }
  }
  GridTensorField out = sigma;
  for (auto& v : out.values) v = -apply_compliance(v, m);
  return out;
}

DecompositionReport verify_energy_orthogonality(const GridTensorField& pot,
                                                const GridTensorField& sol,
                                                const ElasticModel& m,
                                                const BoxMesh& mesh,
                                                const GridTensorField* original) {
  DecompositionReport rep;
  const auto wc = InnerProductWeight::stiffness(m);
  const auto wi = InnerProductWeight::identity();

  const double pot_c = field_norm(mesh, pot, wc);
  const double sol_c = field_norm(mesh, sol, wc);
  const double pot_i = field_norm(mesh, pot, wi);
  const double sol_i = field_norm(mesh, sol, wi);
  rep.potential_norm = pot_i;
  rep.solenoidal_norm = sol_i;

  if (pot_c > 0.0 && sol_c > 0.0)
    rep.orthogonality_residual_weighted =
        std::abs(inner_product(mesh, pot, sol, wc)) / (pot_c * sol_c);
  if (pot_i > 0.0 && sol_i > 0.0)
    rep.orthogonality_residual_identity =
        std::abs(inner_product(mesh, pot, sol, wi)) / (pot_i * sol_i);

  if (original) {
    GridTensorField sum = to_gauss(mesh, pot);
    sum += to_gauss(mesh, sol);
    sum -= to_gauss(mesh, *original);
    const double denom = field_norm(mesh, *original, wi);
    rep.recomposition_error = denom > 0.0 ? field_norm(mesh, sum, wi) / denom : 0.0;
  }

  // Membership of sol in the weighted complement: project it back onto
  // gradient fields; the potential fraction is the weak residual of
  // Div(C:sol) = 0 with zero flux.
  if (sol_i > 0.0) {
    const auto back = fem::helmholtz_decompose(sol, mesh,
                                               fem::DecomposeMode::zero_flux, m);
    rep.weak_residual = field_norm(mesh, back.potential_part, wc) / sol_c;
    GridTensorField csol = to_gauss(mesh, sol);
    for (auto& v : csol.values) v = apply_stiffness(v, m);
    rep.boundary_flux = max_boundary_traction(mesh, csol) / csol.max_abs();
  }
  return rep;
}

}  // namespace restress::decomp
