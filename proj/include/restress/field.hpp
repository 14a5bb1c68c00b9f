#ifndef RESTRESS_FIELD_HPP
#define RESTRESS_FIELD_HPP

#include <functional>
#include <vector>

#include "restress/mesh.hpp"
#include "restress/tensor.hpp"

namespace restress {

/// Sampling convention for grid fields.
///   nodal      - one value per mesh node, trilinear interpolation between.
///   cell_gauss - 8 values per cell at the 2x2x2 Gauss points, cell-major
///                with the Gauss index minor (x fastest, matching
///                gauss_point_ref).  Per-cell trilinear reconstruction
///                through the 8 samples is exact for symmetric gradients of
///                nodal displacement fields.
enum class FieldSampling { nodal, cell_gauss };

/// Per-node displacement vectors (meters).
struct GridVectorField {
  std::vector<std::array<double, 3>> values;

  static GridVectorField zeros(const BoxMesh& mesh) {
    GridVectorField f;
    f.values.assign(mesh.node_count(), {0.0, 0.0, 0.0});
    return f;
  }
};

/// Sampled symmetric-tensor field on a BoxMesh.
struct GridTensorField {
  FieldSampling sampling = FieldSampling::nodal;
  std::vector<SymTensor2> values;

  static GridTensorField zeros(const BoxMesh& mesh, FieldSampling s) {
    GridTensorField f;
    f.sampling = s;
    f.values.assign(s == FieldSampling::nodal
                        ? static_cast<size_t>(mesh.node_count())
                        : static_cast<size_t>(mesh.cell_count()) * 8,
                    SymTensor2{});
    return f;
  }

  size_t expected_size(const BoxMesh& mesh) const {
    return sampling == FieldSampling::nodal
               ? static_cast<size_t>(mesh.node_count())
               : static_cast<size_t>(mesh.cell_count()) * 8;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& t : values) m = std::max(m, t.max_abs());
    return m;
  }

  GridTensorField& operator+=(const GridTensorField& o);
  GridTensorField& operator-=(const GridTensorField& o);
  GridTensorField& operator*=(double s);
  friend GridTensorField operator-(GridTensorField a) { return a *= -1.0; }
  friend GridTensorField operator+(GridTensorField a, const GridTensorField& b) { return a += b; }
  friend GridTensorField operator-(GridTensorField a, const GridTensorField& b) { return a -= b; }
};

/// Sample an analytic tensor function onto a mesh.
GridTensorField sample_tensor_field(
    const BoxMesh& mesh, FieldSampling sampling,
    const std::function<SymTensor2(const std::array<double, 3>&)>& fn);

GridVectorField sample_vector_field(
    const BoxMesh& mesh,
    const std::function<std::array<double, 3>(const std::array<double, 3>&)>& fn);

/// Trilinear interpolation of a field at an arbitrary point inside the box.
/// nodal fields interpolate the continuous trilinear interpolant; cell_gauss
/// fields use the unique per-cell trilinear through the 8 Gauss samples.
SymTensor2 interpolate(const BoxMesh& mesh, const GridTensorField& field,
                       const std::array<double, 3>& x);

/// Symmetric gradient of a nodal displacement field evaluated at the 2x2x2
/// Gauss points of every cell.  This is the discrete strain used by the
/// solver and exactly representable in cell_gauss sampling.
GridTensorField symmetric_gradient(const BoxMesh& mesh, const GridVectorField& u);

/// Volume-weighted average of a cell_gauss field to the nodes.  Nodal inputs
/// are returned unchanged.
GridTensorField average_to_nodes(const BoxMesh& mesh, const GridTensorField& field);

/// Interpolate a nodal field to cell_gauss sampling (identity on cell_gauss).
GridTensorField to_gauss(const BoxMesh& mesh, const GridTensorField& field);

/// Weighting of the field inner product.
struct InnerProductWeight {
  const ElasticModel* model = nullptr;  // null: identity weight (plain L2)
  static InnerProductWeight identity() { return {}; }
  static InnerProductWeight stiffness(const ElasticModel& m) { return {&m}; }
};

/// Quadrature rule for field reductions.  cell_gauss2 is the 2x2x2 per-cell
/// Gauss rule matching the element order of the solver.
enum class QuadratureRule { cell_gauss2 };

/// <a,b> = integral of a:b (identity weight) or (C:a):b (stiffness weight)
/// over the box.  Fields may differ in sampling; both are evaluated at the
/// quadrature points.  Summation is cell-ordered and deterministic.
double inner_product(const BoxMesh& mesh, const GridTensorField& a,
                     const GridTensorField& b,
                     const InnerProductWeight& weight = InnerProductWeight::identity(),
                     QuadratureRule quad = QuadratureRule::cell_gauss2);

/// L2 norm under the same quadrature.
double field_norm(const BoxMesh& mesh, const GridTensorField& a,
                  const InnerProductWeight& weight = InnerProductWeight::identity());

/// Volume-average tensor (the stress-balance diagnostic).
SymTensor2 mean_stress(const BoxMesh& mesh, const GridTensorField& field);

}  // namespace restress

#endif
