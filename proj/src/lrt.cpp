#include "restress/lrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "restress/fem.hpp"

namespace restress::lrt {

Ray::Ray(const std::array<double, 3>& s, const std::array<double, 3>& xi)
    : origin(s), direction(xi) {
  const double n = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("Ray: direction must be a unit vector");
}

RayBoxClip clip_to_box(const BoxMesh& mesh, const Ray& ray) {
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double L = mesh.half_size[a];
    const double o = ray.origin[a], d = ray.direction[a];
    if (d == 0.0) {
      if (std::abs(o) > L) return {};
      continue;
    }
    double lo = (-L - o) / d, hi = (L - o) / d;
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
  }
  if (!(t0 < t1)) return {};
  return {t0, t1, true};
}

LrtValue lrt_integral(const BoxMesh& mesh, const GridTensorField& eps,
                      const Ray& ray) {
  if (eps.values.size() != eps.expected_size(mesh))
    throw std::invalid_argument("lrt_integral: field does not match mesh");
  const RayBoxClip clip = clip_to_box(mesh, ray);
  if (!clip.hit) return {};

  const auto& xi = ray.direction;
  auto point_at = [&](double t) {
    return std::array<double, 3>{ray.origin[0] + t * xi[0],
                                 ray.origin[1] + t * xi[1],
                                 ray.origin[2] + t * xi[2]};
  };
  auto integrand = [&](double t) {
    return interpolate(mesh, eps, point_at(t)).bilinear(xi);
  };

  // Split [t_entry, t_exit] at every cell-plane crossing so each segment
  // lies in one cell, then integrate each with the 2-point Gauss rule.
  std::vector<double> cuts;
  cuts.push_back(clip.t_entry);
  for (int a = 0; a < 3; ++a) {
    if (ray.direction[a] == 0.0) continue;
    const double h = mesh.spacing(a);
    for (int p = 0; p <= mesh.n[a]; ++p) {
      const double plane = -mesh.half_size[a] + p * h;
      const double t = (plane - ray.origin[a]) / ray.direction[a];
      if (t > clip.t_entry && t < clip.t_exit) cuts.push_back(t);
    }
  }
  cuts.push_back(clip.t_exit);
  std::sort(cuts.begin(), cuts.end());

  const double g = 0.5 / std::sqrt(3.0);
  double sum = 0.0;
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double ta = cuts[s], tb = cuts[s + 1];
    const double len = tb - ta;
    if (len <= 0.0) continue;
    const double mid = 0.5 * (ta + tb);
    sum += 0.5 * len * (integrand(mid - g * len) + integrand(mid + g * len));
  }
  return {sum, clip.t_exit - clip.t_entry, true};
}

std::vector<ProjectionImage> simulate_projections(
    const BoxMesh& mesh, const GridTensorField& eps,
    const DetectorGeometry& geometry,
    const std::vector<std::array<double, 3>>& directions) {
  if (directions.empty())
    throw std::invalid_argument("simulate_projections: no directions");
  if (geometry.nu < 1 || geometry.nv < 1 || !(geometry.pitch > 0.0))
    throw std::invalid_argument("simulate_projections: invalid detector");

  std::vector<ProjectionImage> images;
  images.reserve(directions.size());
  for (const auto& dir : directions) {
    const double n =
        std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const std::array<double, 3> xi = {dir[0] / n, dir[1] / n, dir[2] / n};

    // In-plane frame: cross the axis least aligned with xi for u, then v.
    int least = 0;
    for (int a = 1; a < 3; ++a)
      if (std::abs(xi[a]) < std::abs(xi[least])) least = a;
    std::array<double, 3> e{0.0, 0.0, 0.0};
    e[least] = 1.0;
    std::array<double, 3> u = {xi[1] * e[2] - xi[2] * e[1],
                               xi[2] * e[0] - xi[0] * e[2],
                               xi[0] * e[1] - xi[1] * e[0]};
    const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (double& c : u) c /= un;
    const std::array<double, 3> v = {xi[1] * u[2] - xi[2] * u[1],
                                     xi[2] * u[0] - xi[0] * u[2],
                                     xi[0] * u[1] - xi[1] * u[0]};

    ProjectionImage img;
    img.direction = xi;
    img.nu = geometry.nu;
    img.nv = geometry.nv;
    img.pitch = geometry.pitch;
    img.integral.resize(static_cast<size_t>(geometry.nu) * geometry.nv);
    img.path_length.resize(img.integral.size());
    img.average.resize(img.integral.size());

    for (int jv = 0; jv < geometry.nv; ++jv)
      for (int iu = 0; iu < geometry.nu; ++iu) {
        const double cu = (iu + 0.5 - 0.5 * geometry.nu) * geometry.pitch;
        const double cv = (jv + 0.5 - 0.5 * geometry.nv) * geometry.pitch;
        const std::array<double, 3> origin = {cu * u[0] + cv * v[0],
                                              cu * u[1] + cv * v[1],
                                              cu * u[2] + cv * v[2]};
        const LrtValue val = lrt_integral(mesh, eps, Ray(origin, xi));
        const size_t px = static_cast<size_t>(jv) * geometry.nu + iu;
        img.integral[px] = val.value;
        img.path_length[px] = val.path_length;
        img.average[px] =
            val.path_length > 0.0 ? val.value / val.path_length : 0.0;
      }
    images.push_back(std::move(img));
  }
  return images;
}

GridTensorField reconstruct_stress_from_strain(const GridTensorField& eps_elastic,
                                               const ElasticModel& m,
                                               const BoxMesh& mesh) {
  const auto split = fem::helmholtz_decompose(
      eps_elastic, mesh, fem::DecomposeMode::zero_displacement);
  GridTensorField eigenstrain = split.sol_part;
  eigenstrain *= -1.0;
  return fem::forward_solve(eigenstrain, m, mesh).stress;
}

}  // namespace restress::lrt
