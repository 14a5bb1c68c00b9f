#ifndef RESTRESS_MESH_HPP
#define RESTRESS_MESH_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

namespace restress {

/// Regular axis-aligned hexahedral grid on the box [-Lx,Lx]x[-Ly,Ly]x[-Lz,Lz].
/// Nodes are ordered lexicographically with x fastest:
///   node(i,j,k) = i + (nx+1)*(j + (ny+1)*k),   0 <= i <= nx.
/// Cells use the same ordering over (nx,ny,nz).  Every cell has the constant
/// diagonal Jacobian diag(hx/2, hy/2, hz/2).
struct BoxMesh {
  std::array<double, 3> half_size{1.0, 1.0, 1.0};  // meters
  std::array<int, 3> n{2, 2, 2};                   // cells per axis

  int node_count() const { return (n[0] + 1) * (n[1] + 1) * (n[2] + 1); }
  int cell_count() const { return n[0] * n[1] * n[2]; }

  double spacing(int axis) const { return 2.0 * half_size[axis] / n[axis]; }
  double min_spacing() const {
    return std::min({spacing(0), spacing(1), spacing(2)});
  }
  double volume() const { return 8.0 * half_size[0] * half_size[1] * half_size[2]; }

  int node_index(int i, int j, int k) const {
    return i + (n[0] + 1) * (j + (n[1] + 1) * k);
  }
  int cell_index(int i, int j, int k) const {
    return i + n[0] * (j + n[1] * k);
  }

  std::array<double, 3> node_coord(int i, int j, int k) const {
    return {-half_size[0] + i * spacing(0),
            -half_size[1] + j * spacing(1),
            -half_size[2] + k * spacing(2)};
  }

  /// The 8 corner node indices of cell (i,j,k), local order x fastest.
  std::array<int, 8> cell_nodes(int i, int j, int k) const {
    std::array<int, 8> v{};
    for (int c = 0; c < 8; ++c)
      v[c] = node_index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
    return v;
  }

  bool contains(const std::array<double, 3>& x) const {
    for (int a = 0; a < 3; ++a)
      if (std::abs(x[a]) > half_size[a]) return false;
    return true;
  }
};

/// Validates sizes and returns the mesh.  Rejects fewer than 2 cells per axis.
BoxMesh build_box_mesh(const std::array<double, 3>& half_size,
                       const std::array<int, 3>& n);

inline BoxMesh build_box_mesh(double half_size, int n) {
  return build_box_mesh({half_size, half_size, half_size}, {n, n, n});
}

/// 1-D Gauss-Legendre abscissa for the 2-point rule on [-1,1].
inline constexpr double kGauss2 = 0.57735026918962576451;  // 1/sqrt(3)

/// Reference coordinates of Gauss point g (0..7) of the 2x2x2 rule,
/// ordered x fastest to match the cell node ordering.
inline std::array<double, 3> gauss_point_ref(int g) {
  return {(g & 1) ? kGauss2 : -kGauss2,
          ((g >> 1) & 1) ? kGauss2 : -kGauss2,
          ((g >> 2) & 1) ? kGauss2 : -kGauss2};
}

}  // namespace restress

#endif
