#ifndef RESTRESS_FEM_HPP
#define RESTRESS_FEM_HPP

#include <optional>
#include <vector>

#include "restress/field.hpp"
#include "restress/mesh.hpp"
#include "restress/tensor.hpp"

namespace restress::fem {

struct SolverError : std::runtime_error {
  std::vector<double> residual_history;
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
};

struct ForwardResult {
  GridVectorField displacement;
  GridTensorField stress;          // cell_gauss sampling
  GridTensorField elastic_strain;  // cell_gauss sampling
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solve the forward eigenstrain problem in weak form: find U with
///   int (C:grad_s U):grad_s v = int (C:eps*):grad_s v  for all v,
/// the zero-flux boundary condition being natural.  The six rigid modes are
/// projected out of the right-hand side and iterates; the linear solve is
/// conjugate gradients with a Jacobi preconditioner (relative residual
/// 1e-10).  Stress is C:(grad_s U - eps*) at the Gauss points; its volume
/// mean vanishes to solver accuracy.
ForwardResult forward_solve(const GridTensorField& eps_star,
                            const ElasticModel& m, const BoxMesh& mesh);

enum class DecomposeMode {
  zero_flux,          // natural boundary condition, rigid modes removed
  zero_displacement,  // essential U = 0 on the whole boundary
};

struct DecomposeResult {
  GridTensorField potential_part;  // grad_s U at Gauss points
  GridTensorField sol_part;        // eps - potential_part (exact resum)
  GridVectorField displacement;
  int iterations = 0;
};

/// Split eps into a symmetric-gradient part and its complement by solving
///   Div(D:grad_s U) = Div(D:eps)
/// with D = identity by default or the elastic stiffness when a model is
/// given (the energy-weighted variant).  zero_flux matches the natural
/// boundary condition, zero_displacement pins U = 0 on the boundary, which
/// is the ray-transform null-space convention.
DecomposeResult helmholtz_decompose(const GridTensorField& eps,
                                    const BoxMesh& mesh, DecomposeMode mode,
                                    const std::optional<ElasticModel>& weight = {});

/// Saint-Venant incompatibility, R(eps) = curl(curl(eps))^T, evaluated by
/// central second differences at interior nodes (boundary ring is zero).
/// Requires nodal sampling and at least 4 cells per axis.
GridTensorField incompatibility(const GridTensorField& eps, const BoxMesh& mesh);

/// Dense assembly of the zero-flux operator for diagnostics on small meshes.
std::vector<double> assemble_dense_stiffness(const BoxMesh& mesh,
                                             const std::optional<ElasticModel>& m);

}  // namespace restress::fem

#endif
