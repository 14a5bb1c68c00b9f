#ifndef RESTRESS_LRT_HPP
#define RESTRESS_LRT_HPP

#include <vector>

#include "restress/field.hpp"
#include "restress/mesh.hpp"

namespace restress::lrt {

/// A straight ray: origin point and unit direction.
struct Ray {
  std::array<double, 3> origin;
  std::array<double, 3> direction;

  Ray(const std::array<double, 3>& s, const std::array<double, 3>& xi);
};

struct LrtValue {
  double value = 0.0;        // integral of xi^T eps xi dt, meters
  double path_length = 0.0;  // exit - entry, meters
  bool hit = false;
};

/// Entry/exit parameters of a ray against the box (slab clipping).
/// Returns hit = false when the ray misses.
struct RayBoxClip {
  double t_entry = 0.0;
  double t_exit = 0.0;
  bool hit = false;
};
RayBoxClip clip_to_box(const BoxMesh& mesh, const Ray& ray);

/// Longitudinal ray transform of the interpolated field:
/// I eps = int eps_ij(s + t xi) xi_i xi_j dt over the clipped segment.
/// The ray is marched cell boundary to cell boundary with a 2-point Gauss
/// rule per segment, which integrates the trilinear interpolant exactly
/// (the integrand is quadratic in t within a cell).  A miss returns (0, 0)
/// flagged, not an error.
LrtValue lrt_integral(const BoxMesh& mesh, const GridTensorField& eps,
                      const Ray& ray);

struct DetectorGeometry {
  int nu = 8, nv = 8;    // pixels
  double pitch = 1e-3;   // meters
};

struct ProjectionImage {
  std::array<double, 3> direction;
  int nu = 0, nv = 0;
  double pitch = 0.0;
  std::vector<double> integral;     // I eps per pixel (meters), row-major v*nu+u
  std::vector<double> path_length;  // meters; 0 marks a miss
  std::vector<double> average;      // I eps / L where L > 0, else 0
};

/// One image per direction; pixel rays pass through a detector plane
/// centered on the box with a deterministic in-plane frame.
std::vector<ProjectionImage> simulate_projections(
    const BoxMesh& mesh, const GridTensorField& eps,
    const DetectorGeometry& geometry,
    const std::vector<std::array<double, 3>>& directions);

/// Reconstruct the stress field of an equilibrated zero-flux state from its
/// elastic strain: the boundary-vanishing potential component is removed by
/// the zero-displacement decomposition and the solenoidal remainder, negated,
/// is fed to the forward eigenstrain solve.  Exactly the information the ray
/// transform preserves.
GridTensorField reconstruct_stress_from_strain(const GridTensorField& eps_elastic,
                                               const ElasticModel& m,
                                               const BoxMesh& mesh);

}  // namespace restress::lrt

#endif
