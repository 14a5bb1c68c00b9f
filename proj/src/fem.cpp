#include "restress/fem.hpp"

#include <algorithm>
#include <cmath>

namespace restress::fem {

namespace {

// 6x6 map from engineering strain (exx, eyy, ezz, gxy, gyz, gxz) to
// tensor-Voigt stress.  Identity weight means sigma = eps.
struct Material {
  double d[6][6] = {};

  static Material from(const std::optional<ElasticModel>& m) {
    Material out;
    if (m) {
      const double lambda = m->lame_lambda();
      const double mu = m->lame_mu();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.d[i][j] = lambda + (i == j ? 2.0 * mu : 0.0);
      for (int i = 3; i < 6; ++i) out.d[i][i] = mu;
    } else {
      for (int i = 0; i < 3; ++i) out.d[i][i] = 1.0;
      for (int i = 3; i < 6; ++i) out.d[i][i] = 0.5;
    }
    return out;
  }

  SymTensor2 stress(const SymTensor2& eps) const {
    // Tensor-Voigt in, tensor-Voigt out (engineering shears are 2 eps_sh).
    SymTensor2 s;
    for (int i = 0; i < 3; ++i)
      s[i] = d[i][0] * eps.xx + d[i][1] * eps.yy + d[i][2] * eps.zz;
    s.xy = d[3][3] * 2.0 * eps.xy;
    s.yz = d[4][4] * 2.0 * eps.yz;
    s.xz = d[5][5] * 2.0 * eps.xz;
    return s;
  }
};

// Strain-displacement rows at one Gauss point: 6 x 24, engineering shears.
struct BMatrix {
  double b[6][24] = {};
};

std::array<BMatrix, 8> build_b_matrices(const BoxMesh& mesh) {
  const double dxi[3] = {2.0 / mesh.spacing(0), 2.0 / mesh.spacing(1),
                         2.0 / mesh.spacing(2)};
  std::array<BMatrix, 8> out;
  for (int g = 0; g < 8; ++g) {
    const auto xi = gauss_point_ref(g);
    for (int a = 0; a < 8; ++a) {
      const double sx = (a & 1) ? 1.0 : -1.0;
      const double sy = ((a >> 1) & 1) ? 1.0 : -1.0;
      const double sz = ((a >> 2) & 1) ? 1.0 : -1.0;
      const double dN[3] = {
          0.125 * sx * (1.0 + sy * xi[1]) * (1.0 + sz * xi[2]) * dxi[0],
          0.125 * sy * (1.0 + sx * xi[0]) * (1.0 + sz * xi[2]) * dxi[1],
          0.125 * sz * (1.0 + sx * xi[0]) * (1.0 + sy * xi[1]) * dxi[2]};
      const int cx = 3 * a, cy = 3 * a + 1, cz = 3 * a + 2;
      out[g].b[0][cx] = dN[0];
      out[g].b[1][cy] = dN[1];
      out[g].b[2][cz] = dN[2];
      out[g].b[3][cx] = dN[1];
      out[g].b[3][cy] = dN[0];
      out[g].b[4][cy] = dN[2];
      out[g].b[4][cz] = dN[1];
      out[g].b[5][cx] = dN[2];
      out[g].b[5][cz] = dN[0];
    }
  }
  return out;
}

// All cells share one element matrix on a regular grid.
std::array<double, 24 * 24> element_stiffness(const BoxMesh& mesh,
                                              const Material& mat) {
  const auto bs = build_b_matrices(mesh);
  const double dV = mesh.spacing(0) * mesh.spacing(1) * mesh.spacing(2) / 8.0;
  std::array<double, 24 * 24> ke{};
  for (int g = 0; g < 8; ++g) {
    double db[6][24];
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 24; ++c) {
        double s = 0.0;
        for (int k = 0; k < 6; ++k) s += mat.d[r][k] * bs[g].b[k][c];
        db[r][c] = s;
      }
    for (int r = 0; r < 24; ++r)
      for (int c = 0; c < 24; ++c) {
        double s = 0.0;
        for (int k = 0; k < 6; ++k) s += bs[g].b[k][r] * db[k][c];
        ke[r * 24 + c] += s * dV;
      }
  }
  return ke;
}

struct Operator {
  const BoxMesh& mesh;
  std::array<double, 24 * 24> ke;
  std::array<int, 8> node_offset;
  std::vector<char> boundary_node;  // for zero_displacement masking
  bool masked = false;

  explicit Operator(const BoxMesh& m, const Material& mat) : mesh(m) {
    ke = element_stiffness(m, mat);
    const int nx1 = m.n[0] + 1, ny1 = m.n[1] + 1;
    for (int c = 0; c < 8; ++c)
      node_offset[c] = (c & 1) + nx1 * (((c >> 1) & 1) + ny1 * ((c >> 2) & 1));
  }

  void enable_mask() {
    masked = true;
    boundary_node.assign(mesh.node_count(), 0);
    for (int k = 0; k <= mesh.n[2]; ++k)
      for (int j = 0; j <= mesh.n[1]; ++j)
        for (int i = 0; i <= mesh.n[0]; ++i)
          if (i == 0 || j == 0 || k == 0 || i == mesh.n[0] || j == mesh.n[1] ||
              k == mesh.n[2])
            boundary_node[mesh.node_index(i, j, k)] = 1;
  }

  void mask(std::vector<double>& v) const {
    if (!masked) return;
    for (int p = 0; p < mesh.node_count(); ++p)
      if (boundary_node[p])
        for (int c = 0; c < 3; ++c) v[3 * p + c] = 0.0;
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    const int nx1 = mesh.n[0] + 1, ny1 = mesh.n[1] + 1;
    double xe[24], ye[24];
    for (int k = 0; k < mesh.n[2]; ++k)
      for (int j = 0; j < mesh.n[1]; ++j)
        for (int i = 0; i < mesh.n[0]; ++i) {
          const int base = i + nx1 * (j + ny1 * k);
          for (int c = 0; c < 8; ++c) {
            const int p = base + node_offset[c];
            const bool off = masked && boundary_node[p];
            for (int d = 0; d < 3; ++d)
              xe[3 * c + d] = off ? 0.0 : x[3 * p + d];
          }
          for (int r = 0; r < 24; ++r) {
            double s = 0.0;
            const double* row = &ke[r * 24];
            for (int c = 0; c < 24; ++c) s += row[c] * xe[c];
            ye[r] = s;
          }
          for (int c = 0; c < 8; ++c) {
            const int p = base + node_offset[c];
            for (int d = 0; d < 3; ++d) y[3 * p + d] += ye[3 * c + d];
          }
        }
    if (masked) {
      for (int p = 0; p < mesh.node_count(); ++p)
        if (boundary_node[p])
          for (int c = 0; c < 3; ++c) y[3 * p + c] = x[3 * p + c];
    }
  }

  std::vector<double> jacobi_diagonal() const {
    std::vector<double> diag(static_cast<size_t>(mesh.node_count()) * 3, 0.0);
    const int nx1 = mesh.n[0] + 1, ny1 = mesh.n[1] + 1;
    for (int k = 0; k < mesh.n[2]; ++k)
      for (int j = 0; j < mesh.n[1]; ++j)
        for (int i = 0; i < mesh.n[0]; ++i) {
          const int base = i + nx1 * (j + ny1 * k);
          for (int c = 0; c < 8; ++c) {
            const int p = base + node_offset[c];
            for (int d = 0; d < 3; ++d)
              diag[3 * p + d] += ke[(3 * c + d) * 24 + (3 * c + d)];
          }
        }
    if (masked)
      for (int p = 0; p < mesh.node_count(); ++p)
        if (boundary_node[p])
          for (int c = 0; c < 3; ++c) diag[3 * p + c] = 1.0;
    return diag;
  }
};

// Orthonormal basis of the six rigid modes (translations and linearized
// rotations) over the nodal dof vector.
std::vector<std::vector<double>> rigid_modes(const BoxMesh& mesh) {
  const int nn = mesh.node_count();
  std::vector<std::vector<double>> modes(6, std::vector<double>(3 * nn, 0.0));
  for (int k = 0; k <= mesh.n[2]; ++k)
    for (int j = 0; j <= mesh.n[1]; ++j)
      for (int i = 0; i <= mesh.n[0]; ++i) {
        const int p = mesh.node_index(i, j, k);
        const auto x = mesh.node_coord(i, j, k);
        modes[0][3 * p + 0] = 1.0;
        modes[1][3 * p + 1] = 1.0;
        modes[2][3 * p + 2] = 1.0;
        modes[3][3 * p + 1] = -x[2];
        modes[3][3 * p + 2] = x[1];
        modes[4][3 * p + 0] = x[2];
        modes[4][3 * p + 2] = -x[0];
        modes[5][3 * p + 0] = -x[1];
        modes[5][3 * p + 1] = x[0];
      }
  // Modified Gram-Schmidt.
  for (size_t a = 0; a < modes.size(); ++a) {
    for (size_t b = 0; b < a; ++b) {
      double dot = 0.0;
      for (size_t i = 0; i < modes[a].size(); ++i) dot += modes[a][i] * modes[b][i];
      for (size_t i = 0; i < modes[a].size(); ++i) modes[a][i] -= dot * modes[b][i];
    }
    double nrm = 0.0;
    for (double v : modes[a]) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : modes[a]) v /= nrm;
  }
  return modes;
}

void project_out(std::vector<double>& v,
                 const std::vector<std::vector<double>>& modes) {
  for (const auto& q : modes) {
    double dot = 0.0;
    for (size_t i = 0; i < v.size(); ++i) dot += v[i] * q[i];
    for (size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
  }
}

struct CgOutcome {
  int iterations = 0;
  double relative_residual = 0.0;
};

CgOutcome conjugate_gradient(const Operator& op, std::vector<double>& x,
                             std::vector<double> b,
                             const std::vector<std::vector<double>>* modes) {
  const size_t n = b.size();
  const double tol = 1e-10;
  const long max_iter = 20L * op.mesh.node_count();

  op.mask(b);
  if (modes) project_out(b, *modes);
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  x.assign(n, 0.0);
  if (bnorm == 0.0) return {};

  const std::vector<double> diag = op.jacobi_diagonal();
  std::vector<double> r = b, z(n), p(n), q(n);
  std::vector<double> history;
  for (size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  if (modes) project_out(z, *modes);
  p = z;
  double rho = 0.0;
  for (size_t i = 0; i < n; ++i) rho += r[i] * z[i];

  for (long it = 1; it <= max_iter; ++it) {
    op.apply(p, q);
    double pq = 0.0;
    for (size_t i = 0; i < n; ++i) pq += p[i] * q[i];
    const double alpha = rho / pq;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    if (modes && it % 32 == 0) project_out(r, *modes);
    double rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
    history.push_back(rnorm / bnorm);
    if (rnorm <= tol * bnorm) {
      if (modes) project_out(x, *modes);
      return {static_cast<int>(it), rnorm / bnorm};
    }
    for (size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rho_next = 0.0;
    for (size_t i = 0; i < n; ++i) rho_next += r[i] * z[i];
    const double beta = rho_next / rho;
    rho = rho_next;
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("conjugate gradient did not reach 1e-10 within " +
                        std::to_string(max_iter) + " iterations",
                    std::move(history));
}

int node_offset_of(int nx1, int ny1, int c) {
  return (c & 1) + nx1 * (((c >> 1) & 1) + ny1 * ((c >> 2) & 1));
}

// f_a = int (D:eps*) : grad_s v_a over each element, tensor-Voigt stress
// paired with engineering test strains.
std::vector<double> assemble_rhs(const BoxMesh& mesh, const Material& mat,
                                 const GridTensorField& eps_gauss) {
  const auto bs = build_b_matrices(mesh);
  const double dV = mesh.spacing(0) * mesh.spacing(1) * mesh.spacing(2) / 8.0;
  const int nx1 = mesh.n[0] + 1, ny1 = mesh.n[1] + 1;
  std::vector<double> f(static_cast<size_t>(mesh.node_count()) * 3, 0.0);
  for (int k = 0; k < mesh.n[2]; ++k)
    for (int j = 0; j < mesh.n[1]; ++j)
      for (int i = 0; i < mesh.n[0]; ++i) {
        const int base = i + nx1 * (j + ny1 * k);
        const size_t gbase = static_cast<size_t>(mesh.cell_index(i, j, k)) * 8;
        double fe[24] = {};
        for (int g = 0; g < 8; ++g) {
          const SymTensor2 s = mat.stress(eps_gauss.values[gbase + g]);
          const double sv[6] = {s.xx, s.yy, s.zz, s.xy, s.yz, s.xz};
          for (int c = 0; c < 24; ++c) {
            double acc = 0.0;
            for (int r = 0; r < 6; ++r) acc += sv[r] * bs[g].b[r][c];
            fe[c] += acc * dV;
          }
        }
        for (int c = 0; c < 8; ++c) {
          const int p = base + node_offset_of(nx1, ny1, c);
          for (int d = 0; d < 3; ++d) f[3 * p + d] += fe[3 * c + d];
        }
      }
  return f;
}

GridVectorField to_vector_field(const BoxMesh& mesh,
                                const std::vector<double>& x) {
  GridVectorField u = GridVectorField::zeros(mesh);
  for (int p = 0; p < mesh.node_count(); ++p)
    u.values[p] = {x[3 * p], x[3 * p + 1], x[3 * p + 2]};
  return u;
}

struct SolveOutput {
  GridVectorField u;
  GridTensorField grad_u;  // cell_gauss
  int iterations;
  double relative_residual;
};

SolveOutput solve_weak(const GridTensorField& eps_star, const BoxMesh& mesh,
                       const std::optional<ElasticModel>& model,
                       DecomposeMode mode) {
  if (eps_star.values.size() != eps_star.expected_size(mesh))
    throw std::invalid_argument("fem: eigenstrain field does not match mesh");
  const Material mat = Material::from(model);
  const GridTensorField eps_gauss = to_gauss(mesh, eps_star);

  Operator op(mesh, mat);
  std::vector<std::vector<double>> modes;
  const std::vector<std::vector<double>>* modes_ptr = nullptr;
  if (mode == DecomposeMode::zero_flux) {
    modes = rigid_modes(mesh);
    modes_ptr = &modes;
  } else {
    op.enable_mask();
  }

  std::vector<double> b = assemble_rhs(mesh, mat, eps_gauss);
  std::vector<double> x;
  const CgOutcome cg = conjugate_gradient(op, x, std::move(b), modes_ptr);

  SolveOutput out;
  out.u = to_vector_field(mesh, x);
  out.grad_u = symmetric_gradient(mesh, out.u);
  out.iterations = cg.iterations;
  out.relative_residual = cg.relative_residual;
  return out;
}

}  // namespace

ForwardResult forward_solve(const GridTensorField& eps_star,
                            const ElasticModel& m, const BoxMesh& mesh) {
  const SolveOutput s = solve_weak(eps_star, mesh, m, DecomposeMode::zero_flux);
  const GridTensorField eps_gauss = to_gauss(mesh, eps_star);
  ForwardResult out;
  out.displacement = s.u;
  out.elastic_strain = s.grad_u;
  out.elastic_strain -= eps_gauss;
  out.stress = GridTensorField::zeros(mesh, FieldSampling::cell_gauss);
  for (size_t q = 0; q < out.stress.values.size(); ++q)
    out.stress.values[q] = apply_stiffness(out.elastic_strain.values[q], m);
  out.iterations = s.iterations;
  out.relative_residual = s.relative_residual;
  return out;
}

DecomposeResult helmholtz_decompose(const GridTensorField& eps,
                                    const BoxMesh& mesh, DecomposeMode mode,
                                    const std::optional<ElasticModel>& weight) {
  const SolveOutput s = solve_weak(eps, mesh, weight, mode);
  DecomposeResult out;
  out.displacement = s.u;
  out.potential_part = s.grad_u;
  out.sol_part = to_gauss(mesh, eps);
  out.sol_part -= out.potential_part;
  out.iterations = s.iterations;
  return out;
}

GridTensorField incompatibility(const GridTensorField& eps, const BoxMesh& mesh) {
  if (eps.sampling != FieldSampling::nodal)
    throw std::invalid_argument("incompatibility: field must be nodal");
  if (eps.values.size() != eps.expected_size(mesh))
    throw std::invalid_argument("incompatibility: field does not match mesh");
  for (int a = 0; a < 3; ++a)
    if (mesh.n[a] < 4)
      throw std::invalid_argument("incompatibility: need at least 4 cells per axis");

  GridTensorField out = GridTensorField::zeros(mesh, FieldSampling::nodal);
  const double h[3] = {mesh.spacing(0), mesh.spacing(1), mesh.spacing(2)};
  auto at = [&](int i, int j, int k, int c) {
    return eps.values[mesh.node_index(i, j, k)][c];
  };

  for (int k = 1; k < mesh.n[2]; ++k)
    for (int j = 1; j < mesh.n[1]; ++j)
      for (int i = 1; i < mesh.n[0]; ++i) {
        // Central second differences of component c.
        auto dxx = [&](int c) {
          return (at(i + 1, j, k, c) - 2.0 * at(i, j, k, c) + at(i - 1, j, k, c)) /
                 (h[0] * h[0]);
        };
        auto dyy = [&](int c) {
          return (at(i, j + 1, k, c) - 2.0 * at(i, j, k, c) + at(i, j - 1, k, c)) /
                 (h[1] * h[1]);
        };
        auto dzz = [&](int c) {
          return (at(i, j, k + 1, c) - 2.0 * at(i, j, k, c) + at(i, j, k - 1, c)) /
                 (h[2] * h[2]);
        };
        auto dxy = [&](int c) {
          return (at(i + 1, j + 1, k, c) - at(i + 1, j - 1, k, c) -
                  at(i - 1, j + 1, k, c) + at(i - 1, j - 1, k, c)) /
                 (4.0 * h[0] * h[1]);
        };
        auto dyz = [&](int c) {
          return (at(i, j + 1, k + 1, c) - at(i, j + 1, k - 1, c) -
                  at(i, j - 1, k + 1, c) + at(i, j - 1, k - 1, c)) /
                 (4.0 * h[1] * h[2]);
        };
        auto dxz = [&](int c) {
          return (at(i + 1, j, k + 1, c) - at(i + 1, j, k - 1, c) -
                  at(i - 1, j, k + 1, c) + at(i - 1, j, k - 1, c)) /
                 (4.0 * h[0] * h[2]);
        };
        SymTensor2 r;
        r.xx = dzz(1) + dyy(2) - 2.0 * dyz(4);
        r.yy = dxx(2) + dzz(0) - 2.0 * dxz(5);
        r.zz = dyy(0) + dxx(1) - 2.0 * dxy(3);
        r.xy = dyz(5) + dxz(4) - dxy(2) - dzz(3);
        r.yz = dxz(3) + dxy(5) - dyz(0) - dxx(4);
        r.xz = dyz(3) + dxy(4) - dxz(1) - dyy(5);
        out.values[mesh.node_index(i, j, k)] = r;
      }
  return out;
}

std::vector<double> assemble_dense_stiffness(
    const BoxMesh& mesh, const std::optional<ElasticModel>& m) {
  const Material mat = Material::from(m);
  Operator op(mesh, mat);
  const int n = mesh.node_count() * 3;
  std::vector<double> dense(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> e(n, 0.0), col(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    for (int i = 0; i < n; ++i) dense[static_cast<size_t>(i) * n + j] = col[i];
    e[j] = 0.0;
  }
  return dense;
}

}  // namespace restress::fem
