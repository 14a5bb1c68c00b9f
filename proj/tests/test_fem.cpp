#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "restress/decomp.hpp"
#include "restress/fem.hpp"
#include "restress/linalg.hpp"
#include "restress/maxwell.hpp"

using namespace restress;
using namespace restress::fem;

namespace {

const ElasticModel kInconel(208e9, 0.28);

GridVectorField random_nodal_displacement(const BoxMesh& mesh,
                                          std::mt19937_64& rng, double scale,
                                          bool zero_boundary = false) {
  std::uniform_real_distribution<double> u(-scale, scale);
  GridVectorField f = GridVectorField::zeros(mesh);
  for (int k = 0; k <= mesh.n[2]; ++k)
    for (int j = 0; j <= mesh.n[1]; ++j)
      for (int i = 0; i <= mesh.n[0]; ++i) {
        if (zero_boundary && (i == 0 || j == 0 || k == 0 || i == mesh.n[0] ||
                              j == mesh.n[1] || k == mesh.n[2]))
          continue;
        f.values[mesh.node_index(i, j, k)] = {u(rng), u(rng), u(rng)};
      }
  return f;
}

double rel_l2_diff(const BoxMesh& mesh, const GridTensorField& a,
                   const GridTensorField& b) {
  GridTensorField d = to_gauss(mesh, a);
  d -= to_gauss(mesh, b);
  return field_norm(mesh, d) / field_norm(mesh, to_gauss(mesh, b));
}

}  // namespace

TEST_CASE("mesh construction and counting") {
  const BoxMesh m = build_box_mesh(1.0, 2);
  CHECK(m.node_count() == 27);
  CHECK(m.cell_count() == 8);
  const BoxMesh cube = build_box_mesh(0.0085, 8);
  CHECK(cube.spacing(0) == doctest::Approx(2.125e-3).epsilon(1e-14));
  CHECK_THROWS_AS(build_box_mesh(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_box_mesh({1.0, -1.0, 1.0}, {2, 2, 2}),
                  std::invalid_argument);
}

TEST_CASE("assembled operator is symmetric with exactly six rigid modes") {
  const BoxMesh mesh = build_box_mesh(1.0, 2);
  const auto dense = assemble_dense_stiffness(mesh, kInconel);
  const int n = mesh.node_count() * 3;
  linalg::Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = dense[static_cast<size_t>(i) * n + j];

  double asym = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      asym = std::max(asym, std::abs(k(i, j) - k(j, i)));
      scale = std::max(scale, std::abs(k(i, j)));
    }
  CHECK(asym < 1e-12 * scale);

  const auto ev = linalg::symmetric_eigenvalues(k);
  int zero_modes = 0;
  for (double lambda : ev) {
    CHECK(lambda > -1e-9 * ev.back());  // positive semi-definite
    if (std::abs(lambda) < 1e-9 * ev.back()) ++zero_modes;
  }
  CHECK(zero_modes == 6);
}

TEST_CASE("uniform eigenstrain passes the patch test") {
  const BoxMesh mesh = build_box_mesh(0.0085, 4);
  const GridTensorField eps = sample_tensor_field(
      mesh, FieldSampling::cell_gauss,
      [](const auto&) { return SymTensor2::identity() * 1e-3; });
  const auto r = forward_solve(eps, kInconel, mesh);
  CHECK(r.stress.max_abs() < 1e-10 * kInconel.youngs_modulus);
  CHECK(mean_stress(mesh, r.stress).max_abs() <
        1e-10 * kInconel.youngs_modulus);
}

TEST_CASE("representable potential eigenstrains are invisible") {
  const BoxMesh mesh = build_box_mesh(0.0085, 5);
  std::mt19937_64 rng(9);
  const GridVectorField u = random_nodal_displacement(mesh, rng, 1e-6);
  const GridTensorField eps = symmetric_gradient(mesh, u);
  const auto r = forward_solve(eps, kInconel, mesh);
  CHECK(r.stress.max_abs() < 1e-9 * kInconel.youngs_modulus);
}

TEST_CASE("null invisibility also holds on top of a loaded state") {
  const BoxMesh mesh = build_box_mesh(0.0085, 5);
  std::mt19937_64 rng(10);
  const auto basis = maxwell::build_cube24_basis(mesh.half_size[0]);
  const GridTensorField load = sample_tensor_field(
      mesh, FieldSampling::cell_gauss, [&](const std::array<double, 3>& x) {
        return maxwell::stress_from_potential(basis[2], x) * 1e-8;
      });
  const GridVectorField u = random_nodal_displacement(mesh, rng, 1e-6);
  GridTensorField contaminated = load;
  contaminated += symmetric_gradient(mesh, u);

  const auto a = forward_solve(load, kInconel, mesh);
  const auto b = forward_solve(contaminated, kInconel, mesh);
  GridTensorField diff = a.stress;
  diff -= b.stress;
  CHECK(diff.max_abs() < 1e-9 * kInconel.youngs_modulus);
}

TEST_CASE("stress of a smooth potential eigenstrain converges at least O(h)") {
  // grad_s of a smooth non-representable displacement: the solved stress is
  // pure discretization error and must decay.
  // grad_s of u* = (x^2, x y, z^2) scaled to strain magnitudes.
  auto grad_s = [](const std::array<double, 3>& x) {
    const double s = 1e-3 / 0.0085;
    SymTensor2 t;
    t.xx = 2.0 * s * x[0];
    t.yy = s * x[0];
    t.zz = 2.0 * s * x[2];
    t.xy = 0.5 * s * x[1];
    return t;
  };
  std::vector<double> errs;
  for (int n : {4, 8, 16}) {
    const BoxMesh mesh = build_box_mesh(0.0085, n);
    const GridTensorField eps =
        sample_tensor_field(mesh, FieldSampling::cell_gauss, grad_s);
    errs.push_back(forward_solve(eps, kInconel, mesh).stress.max_abs());
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
  const double rate = std::log2(errs[0] / errs[2]) / 2.0;
  CHECK(rate >= 0.9);
}

TEST_CASE("forward stress of a cube eigenstrain balances to zero mean") {
  const BoxMesh mesh = build_box_mesh(0.0085, 6);
  const auto basis = maxwell::build_cube24_basis(mesh.half_size[0]);
  const GridTensorField eps = sample_tensor_field(
      mesh, FieldSampling::cell_gauss, [&](const std::array<double, 3>& x) {
        SymTensor2 t;
        for (int j : {0, 5, 13})
          t += maxwell::stress_from_potential(basis[j], x) * 1e-9;
        return t;
      });
  const auto r = forward_solve(eps, kInconel, mesh);
  CHECK(mean_stress(mesh, r.stress).max_abs() < 1e-8 * r.stress.max_abs());
}

TEST_CASE("zero-displacement decomposition annihilates boundary-pinned potentials") {
  const BoxMesh mesh = build_box_mesh(0.0085, 6);
  std::mt19937_64 rng(11);
  const GridVectorField u = random_nodal_displacement(mesh, rng, 1e-6, true);
  const GridTensorField eps = symmetric_gradient(mesh, u);
  const auto split =
      helmholtz_decompose(eps, mesh, DecomposeMode::zero_displacement);
  CHECK(field_norm(mesh, split.sol_part) < 1e-8 * field_norm(mesh, eps));
}

TEST_CASE("zero-flux decomposition of an analytic solenoid is mostly solenoidal") {
  const auto basis = maxwell::build_cube24_basis(0.0085);
  auto solenoid = [&](const std::array<double, 3>& x) {
    return maxwell::stress_from_potential(basis[0], x) * 1e-9 +
           maxwell::stress_from_potential(basis[15], x) * 5e-10;
  };
  double prev = 1e300;
  for (int n : {8, 16}) {
    const BoxMesh mesh = build_box_mesh(0.0085, n);
    const GridTensorField eps =
        sample_tensor_field(mesh, FieldSampling::cell_gauss, solenoid);
    const auto split = helmholtz_decompose(eps, mesh, DecomposeMode::zero_flux);
    const double frac =
        field_norm(mesh, split.potential_part) / field_norm(mesh, eps);
    CHECK(frac < 0.05);
    CHECK(frac < prev);
    prev = frac;
  }
}

TEST_CASE("decomposition parts recompose and are Galerkin-orthogonal") {
  const BoxMesh mesh = build_box_mesh(0.0085, 6);
  std::mt19937_64 rng(12);
  GridTensorField eps = GridTensorField::zeros(mesh, FieldSampling::cell_gauss);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  for (auto& v : eps.values)
    v = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};

  for (auto mode :
       {DecomposeMode::zero_flux, DecomposeMode::zero_displacement}) {
    const auto split = helmholtz_decompose(eps, mesh, mode);
    GridTensorField sum = split.potential_part;
    sum += split.sol_part;
    sum -= eps;
    CHECK(field_norm(mesh, sum) < 1e-13 * field_norm(mesh, eps));
    const double ip = inner_product(mesh, split.potential_part, split.sol_part);
    const double denom = field_norm(mesh, split.potential_part) *
                         field_norm(mesh, split.sol_part);
    CHECK(std::abs(ip) < 1e-9 * denom);
  }

  // The weighted variant is orthogonal in its own inner product.
  const auto split = helmholtz_decompose(eps, mesh, DecomposeMode::zero_flux,
                                         kInconel);
  const auto w = InnerProductWeight::stiffness(kInconel);
  const double ip =
      inner_product(mesh, split.potential_part, split.sol_part, w);
  CHECK(std::abs(ip) < 1e-9 * field_norm(mesh, split.potential_part, w) *
                           field_norm(mesh, split.sol_part, w));
}

TEST_CASE("incompatibility of compatible fields vanishes") {
  const BoxMesh mesh = build_box_mesh(1.0, 5);
  // grad_s of a quadratic displacement: central differences are exact.
  const GridTensorField eps =
      sample_tensor_field(mesh, FieldSampling::nodal, [](const auto& x) {
        SymTensor2 t;
        t.xx = 2.0 * x[0] + x[1];
        t.yy = -x[1];
        t.zz = x[2] + 0.5 * x[0];
        t.xy = 0.5 * (x[0] - 2.0 * x[1]);
        t.yz = 0.25 * x[2];
        t.xz = 0.25 * (x[2] + x[0]);
        return t;
      });
  const GridTensorField inc = incompatibility(eps, mesh);
  CHECK(inc.max_abs() < 1e-12);
}

TEST_CASE("incompatibility of a quadratic normal strain is the known constant") {
  const BoxMesh mesh = build_box_mesh(1.0, 6);
  const double c = 3.7e-4;
  const GridTensorField eps =
      sample_tensor_field(mesh, FieldSampling::nodal, [&](const auto& x) {
        SymTensor2 t;
        t.xx = c * x[1] * x[1];
        return t;
      });
  const GridTensorField inc = incompatibility(eps, mesh);
  for (int k = 1; k < mesh.n[2]; ++k)
    for (int j = 1; j < mesh.n[1]; ++j)
      for (int i = 1; i < mesh.n[0]; ++i) {
        const SymTensor2& t = inc.values[mesh.node_index(i, j, k)];
        CHECK(t.zz == doctest::Approx(2.0 * c).epsilon(1e-10));
        CHECK(std::abs(t.xx) < 1e-12);
        CHECK(std::abs(t.xy) < 1e-12);
      }
}

TEST_CASE("incompatibility of zero is zero, small meshes are rejected") {
  const BoxMesh mesh = build_box_mesh(1.0, 4);
  const GridTensorField zero = GridTensorField::zeros(mesh, FieldSampling::nodal);
  CHECK(incompatibility(zero, mesh).max_abs() == 0.0);
  const BoxMesh tiny = build_box_mesh(1.0, 3);
  const GridTensorField z2 = GridTensorField::zeros(tiny, FieldSampling::nodal);
  CHECK_THROWS_AS(incompatibility(z2, tiny), std::invalid_argument);
}

TEST_CASE("figure-8 pipeline: decomposed trivial eigenstrain matches the "
          "basis-fitted inverse solution") {
  // Build an analytic equilibrated stress, take its trivial inverse
  // eigenstrain, split off the potential, and compare the solenoidal
  // remainder with an inverse fit over the eigenstrain basis whose columns
  // are forward-solved stresses.
  const double L = 0.0085;
  const auto basis = maxwell::build_cube24_basis(L);
  auto sigma_fn = [&](const std::array<double, 3>& x) {
    return maxwell::stress_from_potential(basis[0], x) * (300e6 * L * L);
  };

  auto run = [&](int n) {
    const BoxMesh mesh = build_box_mesh(L, n);
    const GridTensorField sigma =
        sample_tensor_field(mesh, FieldSampling::cell_gauss, sigma_fn);
    const GridTensorField trivial =
        decomp::trivial_solution(sigma, kInconel, mesh);
    const auto split =
        helmholtz_decompose(trivial, mesh, DecomposeMode::zero_flux);

    // Inverse fit: stress samples at the measurement grid, columns from
    // the forward solve of each basis eigenstrain.
    std::vector<std::array<double, 3>> pts;
    const double extent = L - 1e-3;
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i)
        pts.push_back({0.0, -extent + 2 * extent * i / 7.0,
                       -extent + 2 * extent * j / 7.0});

    linalg::Matrix a(static_cast<int>(pts.size()) * 6, 24);
    std::vector<GridTensorField> basis_eps;
    for (int b = 0; b < 24; ++b) {
      const GridTensorField eps = sample_tensor_field(
          mesh, FieldSampling::cell_gauss, [&](const std::array<double, 3>& x) {
            return maxwell::stress_from_potential(basis[b], x);
          });
      basis_eps.push_back(eps);
      const auto fwd = forward_solve(eps, kInconel, mesh);
      const GridTensorField nodal = average_to_nodes(mesh, fwd.stress);
      for (size_t p = 0; p < pts.size(); ++p) {
        const SymTensor2 s = interpolate(mesh, nodal, pts[p]);
        for (int c = 0; c < 6; ++c) a(static_cast<int>(6 * p) + c, b) = s[c];
      }
    }
    std::vector<double> rhs;
    for (const auto& p : pts) {
      const SymTensor2 s = sigma_fn(p);
      for (int c = 0; c < 6; ++c) rhs.push_back(s[c]);
    }
    const auto ls = linalg::solve_least_squares_scaled(a, rhs, 1e-10);
    GridTensorField inverse_fit =
        GridTensorField::zeros(mesh, FieldSampling::cell_gauss);
    for (int b = 0; b < 24; ++b) {
      GridTensorField t = basis_eps[b];
      t *= ls.x[b];
      inverse_fit += t;
    }
    return rel_l2_diff(mesh, split.sol_part, inverse_fit);
  };

  const double coarse = run(8);
  const double fine = run(12);
  CHECK(coarse < 0.30);
  CHECK(fine < 0.15);
  CHECK(fine < coarse);
}
