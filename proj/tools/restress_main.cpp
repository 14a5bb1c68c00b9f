// Batch CLI for residual-stress eigenstrain analysis: axisymmetric forward
// and inverse fits, Maxwell-potential cube fits, Helmholtz decompositions,
// ray-transform simulation and the strain-to-stress link check.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "restress/axisym.hpp"
#include "restress/decomp.hpp"
#include "restress/fem.hpp"
#include "restress/io/csv.hpp"
#include "restress/io/report.hpp"
#include "restress/io/svg.hpp"
#include "restress/lrt.hpp"
#include "restress/maxwell.hpp"

using namespace restress;

namespace {

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stod(cell));
  }
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

std::string echo_string(const io::Provenance& prov) {
  std::string out;
  for (const auto& line : io::echo_lines(prov)) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

struct CommonArgs {
  std::string output_dir = ".";
  bool stamp = false;
};

// ---------------------------------------------------------------- axisym --

struct AxisymArgs {
  double e_gpa = 130.0;
  double nu = 0.34;
  double radius_mm = 1.5;
  int order = 5;
};

void add_axisym_material(CLI::App* cmd, AxisymArgs& a) {
  cmd->add_option("--E-GPa", a.e_gpa, "Young's modulus in GPa")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--nu", a.nu, "Poisson ratio")
      ->check(CLI::Range(-0.999, 0.4999));
  cmd->add_option("--radius-mm", a.radius_mm, "cylinder radius in mm")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--order", a.order, "coefficient count l per component")
      ->check(CLI::Range(2, 16));
}

void echo_axisym(io::Provenance& prov, const AxisymArgs& a) {
  prov.set("E_GPa", a.e_gpa);
  prov.set("nu", a.nu);
  prov.set("radius_mm", a.radius_mm);
  prov.set("order", a.order);
}

io::svg::Figure axisym_fit_figure(const axisym::AxisymStressProfile& measured,
                                  const axisym::AxisymPolyField& e,
                                  const ElasticModel& m, double R) {
  std::vector<double> dense_r;
  for (int i = 0; i <= 120; ++i) dense_r.push_back(R * i / 120.0);
  const auto model = axisym::forward_stress(e, m, dense_r);

  io::svg::Figure fig(3);
  const char* names[3] = {"sigma_rr [MPa]", "sigma_tt [MPa]", "sigma_zz [MPa]"};
  const std::vector<double>* model_cols[3] = {&model.sigma_rr, &model.sigma_tt,
                                              &model.sigma_zz};
  const std::vector<double>* meas_cols[3] = {&measured.sigma_rr,
                                             &measured.sigma_tt,
                                             &measured.sigma_zz};
  const std::vector<double>* unc_cols[3] = {&measured.u_rr, &measured.u_tt,
                                            &measured.u_zz};
  for (int c = 0; c < 3; ++c) {
    io::svg::Panel p;
    p.title = names[c];
    p.xlabel = "r [mm]";
    io::svg::Series fit_line;
    for (size_t i = 0; i < dense_r.size(); ++i) {
      fit_line.x.push_back(dense_r[i] * 1e3);
      fit_line.y.push_back((*model_cols[c])[i] * 1e-6);
    }
    fit_line.label = "fit";
    p.series.push_back(std::move(fit_line));
    io::svg::Series pts;
    pts.line = false;
    pts.points = true;
    pts.color = "#c03020";
    pts.label = "measured";
    for (size_t i = 0; i < measured.size(); ++i) {
      pts.x.push_back(measured.r[i] * 1e3);
      pts.y.push_back((*meas_cols[c])[i] * 1e-6);
      if (measured.has_uncertainty())
        pts.yerr.push_back((*unc_cols[c])[i] * 1e-6);
    }
    p.series.push_back(std::move(pts));
    fig.add_panel(std::move(p));
  }
  const char* enames[3] = {"eps*_rr", "eps*_tt", "eps*_zz"};
  for (int c = 0; c < 3; ++c) {
    io::svg::Panel p;
    p.title = enames[c];
    p.xlabel = "r [mm]";
    io::svg::Series s;
    for (double r : dense_r) {
      s.x.push_back(r * 1e3);
      s.y.push_back(c == 0   ? e.eval_rr(r)
                    : c == 1 ? e.eval_tt(r)
                             : e.eval_zz(r));
    }
    s.color = "#207040";
    p.series.push_back(std::move(s));
    fig.add_panel(std::move(p));
  }
  return fig;
}

int run_axisym_forward(const CommonArgs& common, const AxisymArgs& mat,
                       const std::string& f_text, const std::string& g_text,
                       const std::string& h_text, int num_points,
                       const std::string& prefix) {
  const ElasticModel m(mat.e_gpa * 1e9, mat.nu);
  const double R = mat.radius_mm * 1e-3;
  axisym::AxisymPolyField e = axisym::AxisymPolyField::zeros(mat.order, R);
  const auto fill = [&](std::vector<double>& dst, const std::string& text) {
    const auto v = parse_coeff_list(text);
    if (static_cast<int>(v.size()) != mat.order)
      throw CLI::ValidationError(
          "coefficient lists must have exactly --order entries");
    dst = v;
  };
  fill(e.f, f_text);
  fill(e.g, g_text);
  fill(e.h, h_text);

  std::vector<double> radii;
  for (int i = 0; i < num_points; ++i)
    radii.push_back(R * i / (num_points - 1.0));
  const auto profile = axisym::forward_stress(e, m, radii);
  const auto solution = axisym::forward_solution(e, m);

  io::Provenance prov;
  echo_axisym(prov, mat);
  prov.set("f", f_text);
  prov.set("g", g_text);
  prov.set("h", h_text);
  prov.set("num_points", num_points);

  const std::string csv_path =
      join_path(common.output_dir, prefix + "_profile.csv");
  io::write_profile_csv(csv_path, profile, io::echo_lines(prov));
  io::JsonValue report = io::make_report("axisym-forward", prov);
  report["eigenstrain"] = io::eigenstrain_json(e);
  io::JsonValue sol = io::JsonValue::object();
  sol["alpha"] = io::JsonValue(solution.alpha);
  sol["eps_zz_bar"] = io::JsonValue(solution.eps_zz_bar);
  sol["Up"] = io::JsonValue::array_of(solution.Up);
  report["solution"] = std::move(sol);
  report.write_file(join_path(common.output_dir, prefix + "_solution.json"));

  io::svg::Figure fig = axisym_fit_figure(profile, e, m, R);
  fig.metadata = echo_string(prov);
  fig.save(join_path(common.output_dir, prefix + "_plot.svg"), common.stamp);
  return 0;
}

int run_axisym_fit(const CommonArgs& common, const AxisymArgs& mat,
                   const std::string& input, bool include_null,
                   bool keep_linear, bool no_weights,
                   const std::string& prefix) {
  const ElasticModel m(mat.e_gpa * 1e9, mat.nu);
  const double R = mat.radius_mm * 1e-3;
  const auto profile = io::parse_profile_csv(input, R);

  axisym::AxisymFitOptions options;
  options.exclude_null = !include_null;
  options.zero_linear_terms = !keep_linear;
  options.use_uncertainty_weights = !no_weights;
  const auto fit = axisym::fit_stress(profile, mat.order, R, m, options);

  io::Provenance prov;
  prov.add_input(input);
  echo_axisym(prov, mat);
  prov.set("exclude_null", options.exclude_null ? "true" : "false");
  prov.set("zero_linear_terms", options.zero_linear_terms ? "true" : "false");
  prov.set("weighted", options.use_uncertainty_weights ? "true" : "false");
  io::JsonValue report = io::make_report("axisym-fit", prov);
  report["fit"] = io::fit_diagnostics_json(fit.report);
  report["eigenstrain"] = io::eigenstrain_json(fit.eigenstrain);
  report.write_file(join_path(common.output_dir, prefix + "_report.json"));

  io::svg::Figure fig = axisym_fit_figure(profile, fit.eigenstrain, m, R);
  fig.metadata = echo_string(prov);
  fig.save(join_path(common.output_dir, prefix + "_fit.svg"), common.stamp);
  return 0;
}

int run_axisym_fit_d0(const CommonArgs& common, const AxisymArgs& mat,
                      const std::string& input, int d0_order, bool keep_linear,
                      bool no_weights, const std::string& prefix) {
  const ElasticModel m(mat.e_gpa * 1e9, mat.nu);
  const double R = mat.radius_mm * 1e-3;
  const auto lattice = io::parse_lattice_csv(input, R);

  axisym::AxisymFitOptions options;
  options.zero_linear_terms = !keep_linear;
  options.use_uncertainty_weights = !no_weights;
  const auto fit =
      axisym::fit_with_d0(lattice, mat.order, d0_order, R, m, options);

  io::Provenance prov;
  prov.add_input(input);
  echo_axisym(prov, mat);
  prov.set("d0_order", d0_order);
  io::JsonValue report = io::make_report("axisym-fit-d0", prov);
  report["fit"] = io::fit_diagnostics_json(fit.report);
  report["eigenstrain"] = io::eigenstrain_json(fit.eigenstrain);
  report["d0"] = io::d0_json(fit.d0);
  report["converged"] = io::JsonValue(fit.converged);
  report["iterations"] = io::JsonValue(fit.iterations);
  report.write_file(join_path(common.output_dir, prefix + "_report.json"));

  // Stress-space view of the lattice data at the fitted d0 for the plot.
  axisym::AxisymStressProfile measured;
  measured.r = lattice.r;
  const double k = m.youngs_modulus /
                   ((1.0 + m.poisson_ratio) * (1.0 - 2.0 * m.poisson_ratio));
  const double nu = m.poisson_ratio;
  for (size_t i = 0; i < lattice.size(); ++i) {
    const double d0 = fit.d0.eval(lattice.r[i]);
    const double err = (lattice.d[0][i] - d0) / d0;
    const double ett = (lattice.d[1][i] - d0) / d0;
    const double ezz = (lattice.d[2][i] - d0) / d0;
    measured.sigma_rr.push_back(k * ((1 - nu) * err + nu * ett + nu * ezz));
    measured.sigma_tt.push_back(k * (nu * err + (1 - nu) * ett + nu * ezz));
    measured.sigma_zz.push_back(k * (nu * err + nu * ett + (1 - nu) * ezz));
  }
  io::svg::Figure fig = axisym_fit_figure(measured, fit.eigenstrain, m, R);
  fig.metadata = echo_string(prov);
  fig.save(join_path(common.output_dir, prefix + "_fit.svg"), common.stamp);

  if (!fit.converged) {
    std::cerr << io::error_json("numerical",
                                "d0 co-estimation did not converge");
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------------ cube --

int run_cube_fit(const CommonArgs& common, const std::string& input,
                 double l_mm, int z_order, int plane_terms, int sample_n,
                 const std::string& prefix) {
  const double L = l_mm * 1e-3;
  std::vector<std::string> warnings;
  const auto samples = io::parse_grid_csv(input, L, &warnings);
  const auto basis = maxwell::build_symmetric_basis(z_order, plane_terms, L);
  auto fit = maxwell::fit_stress_field(samples, basis);
  for (const auto& w : warnings) fit.report.warnings.push_back(w);

  // Extrapolation guard: the fitted field is dumped over the full cube,
  // the samples usually cover less.
  std::array<double, 3> lo{L, L, L}, hi{-L, -L, -L};
  for (const auto& p : samples.points)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  if (lo[0] > -L || lo[1] > -L || lo[2] > -L || hi[0] < L || hi[1] < L ||
      hi[2] < L)
    fit.report.warnings.push_back(
        "sampled output extends outside the bounding box of the measurements "
        "(extrapolation)");

  io::Provenance prov;
  prov.add_input(input);
  prov.set("L_mm", l_mm);
  prov.set("z_order", z_order);
  prov.set("plane_terms", plane_terms);
  prov.set("sample_n", sample_n);
  io::JsonValue report = io::make_report("cube-fit", prov);
  report["fit"] =
      io::maxwell_fit_json(fit, maxwell::basis_labels(z_order, plane_terms));
  // Structural diagnostics of the fitted field on the default 17^3 grid.
  const auto diag = maxwell::field_diagnostics(fit.fitted, 17);
  io::JsonValue dj = io::JsonValue::object();
  dj["max_divergence_Pa_per_m"] = io::JsonValue(diag.max_divergence);
  dj["max_boundary_traction_Pa"] = io::JsonValue(diag.max_boundary_traction);
  dj["max_stress_Pa"] = io::JsonValue(diag.max_stress);
  io::JsonValue meanj = io::JsonValue::array();
  for (int c = 0; c < 6; ++c) meanj.push_back(io::JsonValue(diag.mean[c]));
  dj["mean_stress_Pa"] = std::move(meanj);
  report["field_diagnostics"] = std::move(dj);
  report.write_file(join_path(common.output_dir, prefix + "_report.json"));

  // Fitted stress on a nodal grid for downstream decomposition/plotting.
  const BoxMesh mesh = build_box_mesh(L, sample_n - 1);
  const GridTensorField field = sample_tensor_field(
      mesh, FieldSampling::nodal, [&](const std::array<double, 3>& x) {
        return maxwell::stress_from_potential(fit.fitted, x);
      });
  io::write_field(join_path(common.output_dir, prefix + "_field"), mesh, field,
                  "stress", prov.config);

  // Cross-section heat maps on x = 0.
  io::svg::Figure heat(3);
  for (int c = 0; c < 6; ++c) {
    io::svg::Heatmap h;
    h.title = std::string("sigma_") + kTensorComponentNames[c] + " [MPa], x=0";
    h.nx = 33;
    h.ny = 33;
    h.x0 = -l_mm;
    h.x1 = l_mm;
    h.y0 = -l_mm;
    h.y1 = l_mm;
    h.xlabel = "y [mm], z [mm]";
    for (int j = 0; j < 33; ++j)
      for (int i = 0; i < 33; ++i) {
        const double y = -L + 2.0 * L * i / 32.0;
        const double z = -L + 2.0 * L * j / 32.0;
        h.values.push_back(
            maxwell::stress_from_potential(fit.fitted, {0.0, y, z})[c] * 1e-6);
      }
    heat.add_heatmap(std::move(h));
  }
  heat.metadata = echo_string(prov);
  heat.save(join_path(common.output_dir, prefix + "_sections.svg"),
            common.stamp);

  // Profiles along the y and z axes, measured points nearest each axis.
  io::svg::Figure prof(2, 430, 320);
  for (int axis = 1; axis <= 2; ++axis) {
    io::svg::Panel p;
    p.title = axis == 1 ? "normal stresses along y" : "normal stresses along z";
    p.xlabel = axis == 1 ? "y [mm]" : "z [mm]";
    const char* colors[3] = {"#1f6fb4", "#c03020", "#207040"};
    const int other = axis == 1 ? 2 : 1;
    double nearest = 2.0 * L;
    for (const auto& pt : samples.points)
      nearest = std::min(nearest, std::abs(pt[other]));
    for (int c = 0; c < 3; ++c) {
      io::svg::Series s;
      s.color = colors[c];
      s.label = std::string("sigma_") + kTensorComponentNames[c] + " [MPa]";
      for (int i = 0; i <= 100; ++i) {
        const double t = -L + 2.0 * L * i / 100.0;
        std::array<double, 3> x{0.0, 0.0, 0.0};
        x[axis] = t;
        s.x.push_back(t * 1e3);
        s.y.push_back(maxwell::stress_from_potential(fit.fitted, x)[c] * 1e-6);
      }
      p.series.push_back(std::move(s));
      io::svg::Series pts;
      pts.line = false;
      pts.points = true;
      pts.color = colors[c];
      for (size_t k = 0; k < samples.size(); ++k) {
        if (std::abs(samples.points[k][other]) > nearest * 1.0001) continue;
        pts.x.push_back(samples.points[k][axis] * 1e3);
        pts.y.push_back(samples.sigma[k][c] * 1e-6);
        if (!samples.uncertainty.empty())
          pts.yerr.push_back(samples.uncertainty[k][c] * 1e-6);
      }
      p.series.push_back(std::move(pts));
    }
    prof.add_panel(std::move(p));
  }
  prof.metadata = echo_string(prov);
  prof.save(join_path(common.output_dir, prefix + "_profiles.svg"),
            common.stamp);
  return 0;
}

// ------------------------------------------------------------- decompose --

void field_section_heatmaps(io::svg::Figure& fig, const BoxMesh& mesh,
                            const GridTensorField& field,
                            const std::string& name) {
  const GridTensorField nodal = average_to_nodes(mesh, field);
  const int nres = 25;
  for (int c = 0; c < 6; ++c) {
    io::svg::Heatmap h;
    h.title = name + "_" + kTensorComponentNames[c] + ", x=0";
    h.nx = nres;
    h.ny = nres;
    for (int j = 0; j < nres; ++j)
      for (int i = 0; i < nres; ++i) {
        const double y =
            -mesh.half_size[1] + 2.0 * mesh.half_size[1] * i / (nres - 1.0);
        const double z =
            -mesh.half_size[2] + 2.0 * mesh.half_size[2] * j / (nres - 1.0);
        h.values.push_back(interpolate(mesh, nodal, {0.0, y, z})[c]);
      }
    fig.add_heatmap(std::move(h));
  }
}

int run_decompose(const CommonArgs& common, const std::string& input,
                  double e_gpa, double nu, const std::string& weight,
                  const std::string& prefix) {
  const auto file = io::read_field(input);
  if (file.quantity != "stress")
    throw io::ParseError(input + ": decompose expects a stress field");
  const ElasticModel m(e_gpa * 1e9, nu);

  decomp::TrivialCheck check;
  const GridTensorField trivial =
      decomp::trivial_solution(file.field, m, file.mesh, &check);
  const std::optional<ElasticModel> w =
      weight == "stiffness" ? std::optional<ElasticModel>(m) : std::nullopt;
  const auto split = fem::helmholtz_decompose(
      trivial, file.mesh, fem::DecomposeMode::zero_flux, w);
  const auto rep = decomp::verify_energy_orthogonality(
      split.potential_part, split.sol_part, m, file.mesh, &trivial);

  io::Provenance prov;
  prov.add_input(input + ".csv");
  prov.add_input(input + ".json");
  prov.set("E_GPa", e_gpa);
  prov.set("nu", nu);
  prov.set("weight", weight);

  io::write_field(join_path(common.output_dir, prefix + "_trivial"), file.mesh,
                  trivial, "eigenstrain", prov.config);
  io::write_field(join_path(common.output_dir, prefix + "_potential"),
                  file.mesh, split.potential_part, "eigenstrain", prov.config);
  io::write_field(join_path(common.output_dir, prefix + "_solenoidal"),
                  file.mesh, split.sol_part, "eigenstrain", prov.config);
  io::JsonValue report = io::make_report("decompose", prov);
  io::JsonValue d = io::JsonValue::object();
  d["orthogonality_residual_weighted"] =
      io::JsonValue(rep.orthogonality_residual_weighted);
  d["orthogonality_residual_identity"] =
      io::JsonValue(rep.orthogonality_residual_identity);
  d["recomposition_error"] = io::JsonValue(rep.recomposition_error);
  d["potential_norm"] = io::JsonValue(rep.potential_norm);
  d["solenoidal_norm"] = io::JsonValue(rep.solenoidal_norm);
  d["weak_residual"] = io::JsonValue(rep.weak_residual);
  d["boundary_flux"] = io::JsonValue(rep.boundary_flux);
  report["decomposition"] = std::move(d);
  io::JsonValue wj = io::JsonValue::array();
  for (const auto& warning : check.warnings)
    wj.push_back(io::JsonValue(warning));
  report["input_warnings"] = std::move(wj);
  report.write_file(join_path(common.output_dir, prefix + "_report.json"));

  io::svg::Figure fig(6, 250, 230);
  fig.metadata = echo_string(prov);
  field_section_heatmaps(fig, file.mesh, trivial, "trivial");
  field_section_heatmaps(fig, file.mesh, split.potential_part, "potential");
  field_section_heatmaps(fig, file.mesh, split.sol_part, "solenoidal");
  fig.save(join_path(common.output_dir, prefix + "_fields.svg"), common.stamp);
  return 0;
}

// --------------------------------------------------------------- lrt-sim --

std::vector<std::array<double, 3>> parse_directions(const std::string& text) {
  std::vector<std::array<double, 3>> dirs;
  std::stringstream ss(text);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    const auto v = parse_coeff_list(triple);
    if (v.size() != 3)
      throw CLI::ValidationError("--directions wants x,y,z;x,y,z;...");
    dirs.push_back({v[0], v[1], v[2]});
  }
  return dirs;
}

int run_lrt_sim(const CommonArgs& common, const std::string& input,
                const std::string& directions_text, int nu_px, int nv_px,
                double pitch_mm, const std::string& prefix) {
  const auto file = io::read_field(input);
  const auto dirs = parse_directions(directions_text);
  lrt::DetectorGeometry geom;
  geom.nu = nu_px;
  geom.nv = nv_px;
  geom.pitch = pitch_mm * 1e-3;
  const auto images =
      lrt::simulate_projections(file.mesh, file.field, geom, dirs);

  io::Provenance prov;
  prov.add_input(input + ".csv");
  prov.add_input(input + ".json");
  prov.set("directions", directions_text);
  prov.set("nu_px", nu_px);
  prov.set("nv_px", nv_px);
  prov.set("pitch_mm", pitch_mm);
  io::JsonValue header = io::make_report("lrt-sim", prov);
  io::JsonValue dirsj = io::JsonValue::array();

  for (size_t i = 0; i < images.size(); ++i) {
    const auto& img = images[i];
    io::JsonValue dj = io::JsonValue::object();
    io::JsonValue dvec = io::JsonValue::array();
    for (double c : img.direction) dvec.push_back(io::JsonValue(c));
    dj["direction"] = std::move(dvec);
    dj["file"] = io::JsonValue(prefix + "_proj" + std::to_string(i) + ".csv");
    dirsj.push_back(std::move(dj));

    const std::string path = join_path(
        common.output_dir, prefix + "_proj" + std::to_string(i) + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& line : io::echo_lines(prov)) f << "# " << line << "\n";
    f << "u_mm,v_mm,integral_mm,path_mm,eps_bar\n";
    for (int jv = 0; jv < img.nv; ++jv)
      for (int iu = 0; iu < img.nu; ++iu) {
        const size_t px = static_cast<size_t>(jv) * img.nu + iu;
        const double cu = (iu + 0.5 - 0.5 * img.nu) * img.pitch;
        const double cv = (jv + 0.5 - 0.5 * img.nv) * img.pitch;
        f << io::format_display(cu, io::kMm) << ','
          << io::format_display(cv, io::kMm) << ','
          << io::format_display(img.integral[px], io::kMm) << ','
          << io::format_display(img.path_length[px], io::kMm) << ','
          << io::JsonValue::format_number(img.average[px]) << "\n";
      }
  }
  header["projections"] = std::move(dirsj);
  header.write_file(join_path(common.output_dir, prefix + "_geometry.json"));
  return 0;
}

// ------------------------------------------------------------ link-check --

int run_link_check(const CommonArgs& common, double e_gpa, double nu,
                   double l_mm, const std::string& mesh_list, bool contaminate,
                   const std::string& prefix) {
  const ElasticModel m(e_gpa * 1e9, nu);
  const double L = l_mm * 1e-3;
  const auto basis = maxwell::build_cube24_basis(L);
  auto sigma_fn = [&](const std::array<double, 3>& x) {
    return maxwell::stress_from_potential(basis[0], x) * (300e6 * L * L);
  };

  std::vector<int> meshes;
  for (double v : parse_coeff_list(mesh_list))
    meshes.push_back(static_cast<int>(v));
  if (meshes.empty()) throw CLI::ValidationError("--meshes wants e.g. 8,16");

  io::Provenance prov;
  prov.set("E_GPa", e_gpa);
  prov.set("nu", nu);
  prov.set("L_mm", l_mm);
  prov.set("meshes", mesh_list);
  prov.set("contaminate", contaminate ? "true" : "false");
  io::JsonValue report = io::make_report("link-check", prov);
  io::JsonValue rows = io::JsonValue::array();

  std::printf("%6s %14s %22s\n", "n", "rel_error", "contamination_delta");
  double prev = 1e300;
  bool decreasing = true;
  for (int n : meshes) {
    const BoxMesh mesh = build_box_mesh(L, n);
    const GridTensorField sigma =
        sample_tensor_field(mesh, FieldSampling::cell_gauss, sigma_fn);
    const GridTensorField eps =
        sample_tensor_field(mesh, FieldSampling::cell_gauss,
                            [&](const std::array<double, 3>& x) {
                              return apply_compliance(sigma_fn(x), m);
                            });
    const GridTensorField rec =
        lrt::reconstruct_stress_from_strain(eps, m, mesh);
    GridTensorField diff = rec;
    diff -= sigma;
    const double rel = field_norm(mesh, diff) / field_norm(mesh, sigma);

    double delta = 0.0;
    if (contaminate) {
      std::mt19937_64 rng(1234);
      std::uniform_real_distribution<double> u(-1e-6 * L, 1e-6 * L);
      GridVectorField w = GridVectorField::zeros(mesh);
      for (int k = 1; k < mesh.n[2]; ++k)
        for (int j = 1; j < mesh.n[1]; ++j)
          for (int i = 1; i < mesh.n[0]; ++i)
            w.values[mesh.node_index(i, j, k)] = {u(rng), u(rng), u(rng)};
      GridTensorField contaminated = eps;
      contaminated += symmetric_gradient(mesh, w);
      const GridTensorField rec2 =
          lrt::reconstruct_stress_from_strain(contaminated, m, mesh);
      GridTensorField drec = rec2;
      drec -= rec;
      delta = field_norm(mesh, drec) / field_norm(mesh, rec);
    }

    std::printf("%6d %14.6e %22.6e\n", n, rel, delta);
    io::JsonValue row = io::JsonValue::object();
    row["n"] = io::JsonValue(n);
    row["relative_error"] = io::JsonValue(rel);
    row["contamination_delta"] = io::JsonValue(delta);
    rows.push_back(std::move(row));
    if (rel >= prev) decreasing = false;
    prev = rel;
  }
  report["rows"] = std::move(rows);
  report["error_decreasing"] = io::JsonValue(decreasing);
  report.write_file(join_path(common.output_dir, prefix + "_report.json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual-stress eigenstrain analysis"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonArgs common;
  app.add_option("--output-dir", common.output_dir, "directory for artifacts");
  app.add_flag("--stamp", common.stamp, "embed a timestamp in SVG output");

  auto* fwd = app.add_subcommand("axisym-forward",
                                 "stress profile of a polynomial eigenstrain");
  AxisymArgs fwd_mat;
  add_axisym_material(fwd, fwd_mat);
  std::string fwd_f = "0,0,0,0,0", fwd_g = "0,0,0,0,0", fwd_h = "0,0,0,0,0";
  int fwd_points = 41;
  std::string fwd_prefix = "axisym_forward";
  fwd->add_option("--f-coeffs", fwd_f, "eps*_rr coefficients, descending powers")->join(',');
  fwd->add_option("--g-coeffs", fwd_g, "eps*_tt coefficients")->join(',');
  fwd->add_option("--h-coeffs", fwd_h, "eps*_zz coefficients")->join(',');
  fwd->add_option("--num-points", fwd_points)->check(CLI::Range(2, 100000));
  fwd->add_option("--out-prefix", fwd_prefix);

  auto* fit = app.add_subcommand(
      "axisym-fit", "fit eigenstrain coefficients to a stress profile");
  AxisymArgs fit_mat;
  add_axisym_material(fit, fit_mat);
  std::string fit_input;
  bool fit_include_null = false, fit_keep_linear = false,
       fit_no_weights = false;
  std::string fit_prefix = "axisym_fit";
  fit->add_option("--input", fit_input, "profile CSV")->required();
  fit->add_flag("--include-null", fit_include_null,
                "do not apply the null-exclusion constraints");
  fit->add_flag("--keep-linear", fit_keep_linear, "keep r^1 coefficients");
  fit->add_flag("--no-weights", fit_no_weights, "ignore uncertainty columns");
  fit->add_option("--out-prefix", fit_prefix);

  auto* fd0 = app.add_subcommand(
      "axisym-fit-d0",
      "joint eigenstrain and variable-d0 fit of lattice spacings");
  AxisymArgs fd0_mat;
  add_axisym_material(fd0, fd0_mat);
  std::string fd0_input;
  int fd0_order = 2;
  bool fd0_keep_linear = false, fd0_no_weights = false;
  std::string fd0_prefix = "axisym_fit_d0";
  fd0->add_option("--input", fd0_input, "lattice CSV")->required();
  fd0->add_option("--d0-order", fd0_order)->check(CLI::Range(0, 8));
  fd0->add_flag("--keep-linear", fd0_keep_linear);
  fd0->add_flag("--no-weights", fd0_no_weights);
  fd0->add_option("--out-prefix", fd0_prefix);

  auto* cube = app.add_subcommand(
      "cube-fit", "Maxwell-potential fit of cube stress samples");
  std::string cube_input;
  double cube_l_mm = 8.5;
  int cube_z_order = 3, cube_plane_terms = 4, cube_sample_n = 17;
  std::string cube_prefix = "cube_fit";
  cube->add_option("--input", cube_input, "grid CSV")->required();
  cube->add_option("--L-mm", cube_l_mm, "cube half size in mm")
      ->check(CLI::PositiveNumber);
  cube->add_option("--z-order", cube_z_order)->check(CLI::Range(1, 8));
  cube->add_option("--plane-terms", cube_plane_terms)->check(CLI::Range(1, 12));
  cube->add_option("--sample-n", cube_sample_n, "field dump nodes per axis")
      ->check(CLI::Range(3, 65));
  cube->add_option("--out-prefix", cube_prefix);

  auto* dec = app.add_subcommand(
      "decompose",
      "trivial eigenstrain of a stress field and its range-null split");
  std::string dec_input, dec_weight = "identity", dec_prefix = "decompose";
  double dec_e = 208.0, dec_nu = 0.28;
  dec->add_option("--input", dec_input, "field file base (.csv/.json pair)")
      ->required();
  dec->add_option("--E-GPa", dec_e)->check(CLI::PositiveNumber);
  dec->add_option("--nu", dec_nu)->check(CLI::Range(-0.999, 0.4999));
  dec->add_option("--weight", dec_weight)
      ->check(CLI::IsMember({"identity", "stiffness"}));
  dec->add_option("--out-prefix", dec_prefix);

  auto* sim = app.add_subcommand(
      "lrt-sim", "longitudinal ray transform projection images");
  std::string sim_input, sim_dirs = "1,0,0;0,1,0;0,0,1", sim_prefix = "lrt";
  int sim_nu = 16, sim_nv = 16;
  double sim_pitch = 1.0;
  sim->add_option("--input", sim_input, "strain field file base")->required();
  sim->add_option("--directions", sim_dirs, "x,y,z;x,y,z;... ray directions")->join(',');
  sim->add_option("--nu-px", sim_nu)->check(CLI::Range(1, 4096));
  sim->add_option("--nv-px", sim_nv)->check(CLI::Range(1, 4096));
  sim->add_option("--pitch-mm", sim_pitch)->check(CLI::PositiveNumber);
  sim->add_option("--out-prefix", sim_prefix);

  auto* link = app.add_subcommand(
      "link-check",
      "reconstruct stress from contaminated strain at several meshes");
  double link_e = 208.0, link_nu = 0.28, link_l = 8.5;
  std::string link_meshes = "8,16", link_prefix = "link_check";
  bool link_contaminate = true;
  link->add_option("--E-GPa", link_e)->check(CLI::PositiveNumber);
  link->add_option("--nu", link_nu)->check(CLI::Range(-0.999, 0.4999));
  link->add_option("--L-mm", link_l)->check(CLI::PositiveNumber);
  link->add_option("--meshes", link_meshes, "comma list of cells per axis")->join(',');
  link->add_flag("!--no-contaminate", link_contaminate,
                 "skip the invisible-potential invariance column");
  link->add_option("--out-prefix", link_prefix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << io::error_json("usage", e.what());
    return 2;
  }

  try {
    if (fwd->parsed())
      return run_axisym_forward(common, fwd_mat, fwd_f, fwd_g, fwd_h,
                                fwd_points, fwd_prefix);
    if (fit->parsed())
      return run_axisym_fit(common, fit_mat, fit_input, fit_include_null,
                            fit_keep_linear, fit_no_weights, fit_prefix);
    if (fd0->parsed())
      return run_axisym_fit_d0(common, fd0_mat, fd0_input, fd0_order,
                               fd0_keep_linear, fd0_no_weights, fd0_prefix);
    if (cube->parsed())
      return run_cube_fit(common, cube_input, cube_l_mm, cube_z_order,
                          cube_plane_terms, cube_sample_n, cube_prefix);
    if (dec->parsed())
      return run_decompose(common, dec_input, dec_e, dec_nu, dec_weight,
                           dec_prefix);
    if (sim->parsed())
      return run_lrt_sim(common, sim_input, sim_dirs, sim_nu, sim_nv,
                         sim_pitch, sim_prefix);
    if (link->parsed())
      return run_link_check(common, link_e, link_nu, link_l, link_meshes,
                            link_contaminate, link_prefix);
  } catch (const io::ParseError& e) {
    std::cerr << io::error_json("parse", e.what());
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << io::error_json("usage", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << io::error_json("usage", e.what());
    return 2;
  } catch (const fem::SolverError& e) {
    std::cerr << io::error_json("numerical", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << io::error_json("io", e.what());
    return 3;
  }
  return 2;
}
