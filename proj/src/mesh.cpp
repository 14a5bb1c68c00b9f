#include "restress/mesh.hpp"

namespace restress {

BoxMesh build_box_mesh(const std::array<double, 3>& half_size,
                       const std::array<int, 3>& n) {
  for (int a = 0; a < 3; ++a) {
    if (!(half_size[a] > 0.0))
      throw std::invalid_argument("build_box_mesh: half sizes must be > 0");
    if (n[a] < 2)
      throw std::invalid_argument(
          "build_box_mesh: need at least 2 cells per axis");
  }
  BoxMesh mesh;
  mesh.half_size = half_size;
  mesh.n = n;
  return mesh;
}

}  // namespace restress
