#ifndef RESTRESS_DECOMP_HPP
#define RESTRESS_DECOMP_HPP

#include <string>
#include <vector>

#include "restress/fem.hpp"
#include "restress/field.hpp"

namespace restress::decomp {

struct DecompositionReport {
  double orthogonality_residual_weighted = 0.0;  // normalized <pot,sol>_C
  double orthogonality_residual_identity = 0.0;  // normalized <pot,sol>
  double recomposition_error = 0.0;              // relative, ~roundoff
  double potential_norm = 0.0;
  double solenoidal_norm = 0.0;
  /// Complement-membership diagnostics for the weighted part: norm of the
  /// weak residual int (D:sol):grad_s v over the FE test space (zero iff the
  /// interior divergence and boundary flux both vanish weakly), and the
  /// largest node-averaged boundary traction.
  double weak_residual = 0.0;
  double boundary_flux = 0.0;
  std::vector<std::string> warnings;
};

struct TrivialCheck {
  double mean_stress_rel = 0.0;
  double boundary_traction_rel = 0.0;
  std::vector<std::string> warnings;
};

/// The direct inverse-eigenstrain solution -S:sigma, pointwise.  Warns (does
/// not fail) when sigma is visibly out of equilibrium: nonzero volume mean
/// or boundary traction above 1e-6 of the stress scale.
GridTensorField trivial_solution(const GridTensorField& sigma,
                                 const ElasticModel& m, const BoxMesh& mesh,
                                 TrivialCheck* check = nullptr);

/// Orthogonality and membership diagnostics for a potential/solenoidal pair.
/// When the original field is given, the recomposition error of pot + sol
/// against it is reported (zero up to roundoff for pairs produced by
/// helmholtz_decompose).
DecompositionReport verify_energy_orthogonality(
    const GridTensorField& pot, const GridTensorField& sol,
    const ElasticModel& m, const BoxMesh& mesh,
    const GridTensorField* original = nullptr);

}  // namespace restress::decomp

#endif
