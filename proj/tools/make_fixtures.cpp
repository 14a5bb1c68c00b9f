// Regenerates the synthetic data sets under data/.  Everything here is
// synthesized from the library's own forward models with fixed seeds; no
// measured values are included.

#include <cstdio>
#include <random>
#include <string>

#include "restress/axisym.hpp"
#include "restress/io/csv.hpp"
#include "restress/maxwell.hpp"

using namespace restress;

namespace {

axisym::AxisymPolyField sample_eigenstrain(double R) {
  // Complement-space field (g_i = (l-i+1) f_i) with no linear terms,
  // magnitudes around 1e-3.
  axisym::AxisymPolyField e = axisym::AxisymPolyField::zeros(5, R);
  const double r4 = std::pow(R, 4), r3 = std::pow(R, 3), r2 = R * R;
  e.f[0] = 1.1e-3 / r4;
  e.g[0] = 5.0 * e.f[0];
  e.h[0] = 0.9e-3 / r4;
  e.f[1] = -0.4e-3 / r3;
  e.g[1] = 4.0 * e.f[1];
  e.h[1] = 0.2e-3 / r3;
  e.f[2] = 0.7e-3 / r2;
  e.g[2] = 3.0 * e.f[2];
  e.h[2] = -0.5e-3 / r2;
  double fl = 0.0, hl = 0.0;
  for (int i = 1; i <= 4; ++i) {
    fl -= e.f[i - 1] * std::pow(R, 5 - i);
    hl -= 2.0 * e.h[i - 1] * std::pow(R, 5 - i) / (5 - i + 2);
  }
  e.f[4] = e.g[4] = fl;
  e.h[4] = hl;
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  std::mt19937_64 rng(20240101);

  // Bronze cylinder profile, 2 MPa noise, full-diameter layout.
  {
    const double R = 1.5e-3;
    const ElasticModel bronze(130e9, 0.34);
    const axisym::AxisymPolyField e = sample_eigenstrain(R);
    std::vector<double> diam;
    for (int i = 0; i < 21; ++i) diam.push_back(-R + 2.0 * R * i / 20.0);
    std::vector<double> folded;
    for (double r : diam) folded.push_back(std::abs(r));
    auto p = axisym::forward_stress(e, bronze, folded);
    p.r = diam;  // write signed positions; the parser folds them back
    std::normal_distribution<double> noise(0.0, 2e6);
    p.u_rr.assign(p.size(), 2e6);
    p.u_tt.assign(p.size(), 2e6);
    p.u_zz.assign(p.size(), 2e6);
    for (size_t k = 0; k < p.size(); ++k) {
      p.sigma_rr[k] += noise(rng);
      p.sigma_tt[k] += noise(rng);
      p.sigma_zz[k] += noise(rng);
    }
    io::write_profile_csv(dir + "/bronze_rod_profile.csv", p,
                          {"synthetic fixture from make_fixtures, seed 20240101",
                           "bronze rod, E=130 GPa, nu=0.34, R=1.5 mm, 2 MPa noise"});
  }

  // Lattice spacings for the d0 co-estimation, quadratic d0 drift.
  {
    const double R = 1.1e-3;
    const ElasticModel bronze(130e9, 0.34);
    const axisym::AxisymPolyField e = sample_eigenstrain(R);
    const double d_ref = 1.0878;
    std::vector<double> radii;
    for (int i = 0; i < 19; ++i) radii.push_back(R * i / 18.0);
    const auto stress = axisym::forward_stress(e, bronze, radii);
    axisym::LatticeProfile lat;
    lat.r = radii;
    std::normal_distribution<double> noise(0.0, 0.6e-4);
    for (size_t k = 0; k < radii.size(); ++k) {
      const SymTensor2 sig{stress.sigma_rr[k], stress.sigma_tt[k],
                           stress.sigma_zz[k], 0.0, 0.0, 0.0};
      const SymTensor2 eps = apply_compliance(sig, bronze);
      const double t = radii[k] / R;
      const double d0 = d_ref * (1.0 + 1e-4 * t * t);
      lat.d[0].push_back(d0 * (1.0 + eps.xx) + noise(rng));
      lat.d[1].push_back(d0 * (1.0 + eps.yy) + noise(rng));
      lat.d[2].push_back(d0 * (1.0 + eps.zz) + noise(rng));
      for (int c = 0; c < 3; ++c) lat.u[c].push_back(0.6e-4);
    }
    io::write_lattice_csv(dir + "/bronze_rod_lattice.csv", lat,
                          {"synthetic fixture from make_fixtures, seed 20240101",
                           "quadratic d0 drift of 1e-4 relative, 0.6e-4 A noise"});
  }

  // Cube stress on the measurement grid, 10 MPa noise.
  {
    const double L = 8.5e-3;
    const auto basis = maxwell::build_cube24_basis(L);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    maxwell::MaxwellPotential pot;
    pot.half_size = L;
    for (const auto& b : basis) {
      maxwell::MaxwellPotential t = b;
      t *= 40e6 * L * L * u(rng);
      pot += t;
    }
    maxwell::StressSampleSet s;
    const double extent = L - 1e-3;
    std::normal_distribution<double> noise(0.0, 10e6);
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) {
        const double y = -extent + 2.0 * extent * i / 7.0;
        const double z = -extent + 2.0 * extent * j / 7.0;
        s.points.push_back({0.0, y, z});
        const SymTensor2 t = maxwell::stress_from_potential(pot, s.points.back());
        std::array<double, 6> sig, unc;
        for (int c = 0; c < 6; ++c) {
          sig[c] = t[c] + noise(rng);
          unc[c] = 10e6;
        }
        s.sigma.push_back(sig);
        s.uncertainty.push_back(unc);
      }
    io::write_grid_csv(dir + "/inconel_cube_grid.csv", s,
                        {"synthetic fixture from make_fixtures, seed 20240101",
                         "17 mm cube, 8x8 grid on x=0 inset 1 mm, 10 MPa noise"});
  }

  std::printf("fixtures written to %s\n", dir.c_str());
  return 0;
}
