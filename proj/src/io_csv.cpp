#include "restress/io/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "restress/io/json_writer.hpp"

namespace restress::io {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<long double>> rows;
  std::vector<int> line_numbers;

  int column(const std::string& name, const std::string& path) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    throw ParseError(path + ": missing required column '" + name + "'");
  }
  std::optional<int> optional_column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return {};
  }
};

Table read_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open file: " + path);
  Table t;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(stripped);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(t.header.size()) + " cells, found " +
                       std::to_string(cells.size()));
    std::vector<long double> row(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
      char* end = nullptr;
      row[c] = std::strtold(cells[c].c_str(), &end);
      if (end == cells[c].c_str() || *end != '\0')
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": non-numeric cell '" + cells[c] + "' in column '" +
                         t.header[c] + "'");
    }
    t.rows.push_back(std::move(row));
    t.line_numbers.push_back(lineno);
  }
  if (t.header.empty()) throw ParseError(path + ": empty file");
  return t;
}

}  // namespace

std::string format_display(double v, long double factor) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.21Lg",
                static_cast<long double>(v) * factor);
  return buf;
}

double from_display(long double display_value, long double factor) {
  return static_cast<double>(display_value / factor);
}

axisym::AxisymStressProfile parse_profile_csv(
    const std::string& path, std::optional<double> radius_bound) {
  const Table t = read_table(path);
  const int cr = t.column("r_mm", path);
  const int crr = t.column("sigma_rr_MPa", path);
  const int ctt = t.column("sigma_tt_MPa", path);
  const int czz = t.column("sigma_zz_MPa", path);
  const auto urr = t.optional_column("u_rr_MPa");
  const auto utt = t.optional_column("u_tt_MPa");
  const auto uzz = t.optional_column("u_zz_MPa");
  if (t.rows.empty()) throw ParseError(path + ": profile has no data rows");
  const bool with_u = urr && utt && uzz;

  axisym::AxisymStressProfile p;
  for (size_t k = 0; k < t.rows.size(); ++k) {
    const auto& row = t.rows[k];
    // Diameter data is folded about the axis; both halves are kept as
    // independent samples.
    const double r = std::abs(from_display(row[cr], kMm));
    if (radius_bound && r > *radius_bound * (1.0 + 1e-12))
      throw ParseError(path + ":" + std::to_string(t.line_numbers[k]) +
                       ": |r| lies outside the configured radius");
    p.r.push_back(r);
    p.sigma_rr.push_back(from_display(row[crr], kMPa));
    p.sigma_tt.push_back(from_display(row[ctt], kMPa));
    p.sigma_zz.push_back(from_display(row[czz], kMPa));
    if (with_u) {
      p.u_rr.push_back(from_display(row[*urr], kMPa));
      p.u_tt.push_back(from_display(row[*utt], kMPa));
      p.u_zz.push_back(from_display(row[*uzz], kMPa));
    }
  }
  return p;
}

void write_profile_csv(const std::string& path,
                       const axisym::AxisymStressProfile& profile,
                       const std::vector<std::string>& comments) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : comments) f << "# " << line << "\n";
  const bool with_u = profile.has_uncertainty();
  f << "r_mm,sigma_rr_MPa,sigma_tt_MPa,sigma_zz_MPa";
  if (with_u) f << ",u_rr_MPa,u_tt_MPa,u_zz_MPa";
  f << "\n";
  for (size_t k = 0; k < profile.size(); ++k) {
    f << format_display(profile.r[k], kMm) << ','
      << format_display(profile.sigma_rr[k], kMPa) << ','
      << format_display(profile.sigma_tt[k], kMPa) << ','
      << format_display(profile.sigma_zz[k], kMPa);
    if (with_u)
      f << ',' << format_display(profile.u_rr[k], kMPa) << ','
        << format_display(profile.u_tt[k], kMPa) << ','
        << format_display(profile.u_zz[k], kMPa);
    f << "\n";
  }
}

axisym::LatticeProfile parse_lattice_csv(const std::string& path,
                                         std::optional<double> radius_bound) {
  const Table t = read_table(path);
  const int cr = t.column("r_mm", path);
  const int c_d[3] = {t.column("d_rr_A", path), t.column("d_tt_A", path),
                      t.column("d_zz_A", path)};
  const std::optional<int> c_u[3] = {t.optional_column("u_rr_A"),
                                     t.optional_column("u_tt_A"),
                                     t.optional_column("u_zz_A")};
  if (t.rows.empty()) throw ParseError(path + ": profile has no data rows");
  const bool with_u = c_u[0] && c_u[1] && c_u[2];

  axisym::LatticeProfile p;
  for (size_t k = 0; k < t.rows.size(); ++k) {
    const auto& row = t.rows[k];
    const double r = std::abs(from_display(row[cr], kMm));
    if (radius_bound && r > *radius_bound * (1.0 + 1e-12))
      throw ParseError(path + ":" + std::to_string(t.line_numbers[k]) +
                       ": |r| lies outside the configured radius");
    p.r.push_back(r);
    for (int c = 0; c < 3; ++c) {
      // Lattice spacings stay in Angstrom throughout.
      p.d[c].push_back(from_display(row[c_d[c]], 1.0L));
      if (with_u) p.u[c].push_back(from_display(row[*c_u[c]], 1.0L));
    }
  }
  return p;
}

void write_lattice_csv(const std::string& path,
                       const axisym::LatticeProfile& lattice,
                       const std::vector<std::string>& comments) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : comments) f << "# " << line << "\n";
  const bool with_u = lattice.has_uncertainty();
  f << "r_mm,d_rr_A,d_tt_A,d_zz_A";
  if (with_u) f << ",u_rr_A,u_tt_A,u_zz_A";
  f << "\n";
  for (size_t k = 0; k < lattice.size(); ++k) {
    f << format_display(lattice.r[k], kMm);
    for (int c = 0; c < 3; ++c) f << ',' << format_display(lattice.d[c][k], 1.0L);
    if (with_u)
      for (int c = 0; c < 3; ++c) f << ',' << format_display(lattice.u[c][k], 1.0L);
    f << "\n";
  }
}

maxwell::StressSampleSet parse_grid_csv(const std::string& path,
                                        std::optional<double> half_size_bound,
                                        std::vector<std::string>* warnings) {
  const Table t = read_table(path);
  const int cx[3] = {t.column("x_mm", path), t.column("y_mm", path),
                     t.column("z_mm", path)};
  static const char* comp[6] = {"xx", "yy", "zz", "xy", "yz", "xz"};
  int cs[6];
  std::optional<int> cu[6];
  bool with_u = true;
  for (int c = 0; c < 6; ++c) {
    cs[c] = t.column(std::string("sigma_") + comp[c] + "_MPa", path);
    cu[c] = t.optional_column(std::string("u_") + comp[c] + "_MPa");
    if (!cu[c]) with_u = false;
  }
  if (t.rows.empty()) throw ParseError(path + ": grid has no data rows");

  maxwell::StressSampleSet s;
  std::map<std::array<double, 3>, int> seen;
  for (size_t k = 0; k < t.rows.size(); ++k) {
    const auto& row = t.rows[k];
    std::array<double, 3> x;
    for (int a = 0; a < 3; ++a) {
      x[a] = from_display(row[cx[a]], kMm);
      if (half_size_bound && std::abs(x[a]) > *half_size_bound * (1.0 + 1e-12))
        throw ParseError(path + ":" + std::to_string(t.line_numbers[k]) +
                         ": point outside the cube");
    }
    if (auto it = seen.find(x); it != seen.end()) {
      if (warnings)
        warnings->push_back("duplicate point at lines " +
                            std::to_string(it->second) + " and " +
                            std::to_string(t.line_numbers[k]) +
                            "; both retained");
    } else {
      seen.emplace(x, t.line_numbers[k]);
    }
    s.points.push_back(x);
    std::array<double, 6> sig, unc{};
    for (int c = 0; c < 6; ++c) {
      sig[c] = from_display(row[cs[c]], kMPa);
      if (with_u) unc[c] = from_display(row[*cu[c]], kMPa);
    }
    s.sigma.push_back(sig);
    if (with_u) s.uncertainty.push_back(unc);
  }
  return s;
}

void write_grid_csv(const std::string& path,
                    const maxwell::StressSampleSet& samples,
                    const std::vector<std::string>& comments) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : comments) f << "# " << line << "\n";
  static const char* comp[6] = {"xx", "yy", "zz", "xy", "yz", "xz"};
  const bool with_u = !samples.uncertainty.empty();
  f << "x_mm,y_mm,z_mm";
  for (int c = 0; c < 6; ++c) f << ",sigma_" << comp[c] << "_MPa";
  if (with_u)
    for (int c = 0; c < 6; ++c) f << ",u_" << comp[c] << "_MPa";
  f << "\n";
  for (size_t k = 0; k < samples.size(); ++k) {
    f << format_display(samples.points[k][0], kMm) << ','
      << format_display(samples.points[k][1], kMm) << ','
      << format_display(samples.points[k][2], kMm);
    for (int c = 0; c < 6; ++c)
      f << ',' << format_display(samples.sigma[k][c], kMPa);
    if (with_u)
      for (int c = 0; c < 6; ++c)
        f << ',' << format_display(samples.uncertainty[k][c], kMPa);
    f << "\n";
  }
}

void write_field(const std::string& base, const BoxMesh& mesh,
                 const GridTensorField& field, const std::string& quantity,
                 const std::vector<std::pair<std::string, std::string>>& config_echo) {
  if (field.values.size() != field.expected_size(mesh))
    throw std::invalid_argument("write_field: field does not match mesh");
  const bool is_stress = quantity == "stress";
  const long double factor = is_stress ? kMPa : 1.0L;
  const std::string prefix = is_stress ? "sigma_" : quantity + "_";
  const std::string suffix = is_stress ? "_MPa" : "";
  static const char* comp[6] = {"xx", "yy", "zz", "xy", "yz", "xz"};

  std::ofstream f(base + ".csv", std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + base + ".csv");
  f << "x_mm,y_mm,z_mm";
  for (int c = 0; c < 6; ++c) f << ',' << prefix << comp[c] << suffix;
  f << "\n";
  auto emit = [&](const std::array<double, 3>& x, const SymTensor2& t) {
    f << format_display(x[0], kMm) << ',' << format_display(x[1], kMm) << ','
      << format_display(x[2], kMm);
    for (int c = 0; c < 6; ++c) f << ',' << format_display(t[c], factor);
    f << "\n";
  };
  if (field.sampling == FieldSampling::nodal) {
    for (int k = 0; k <= mesh.n[2]; ++k)
      for (int j = 0; j <= mesh.n[1]; ++j)
        for (int i = 0; i <= mesh.n[0]; ++i)
          emit(mesh.node_coord(i, j, k),
               field.values[mesh.node_index(i, j, k)]);
  } else {
    for (int k = 0; k < mesh.n[2]; ++k)
      for (int j = 0; j < mesh.n[1]; ++j)
        for (int i = 0; i < mesh.n[0]; ++i) {
          const auto corner = mesh.node_coord(i, j, k);
          const size_t bidx = static_cast<size_t>(mesh.cell_index(i, j, k)) * 8;
          for (int g = 0; g < 8; ++g) {
            const auto xi = gauss_point_ref(g);
            std::array<double, 3> x;
            for (int a = 0; a < 3; ++a)
              x[a] = corner[a] + 0.5 * (xi[a] + 1.0) * mesh.spacing(a);
            emit(x, field.values[bidx + g]);
          }
        }
  }

  JsonValue header = JsonValue::object();
  header["schema_version"] = JsonValue(1);
  JsonValue meshj = JsonValue::object();
  // Stored as strings so the extended-precision display value survives the
  // JSON round trip exactly.
  JsonValue hs = JsonValue::array();
  for (int a = 0; a < 3; ++a)
    hs.push_back(JsonValue(format_display(mesh.half_size[a], kMm)));
  meshj["half_size_mm"] = std::move(hs);
  JsonValue cells = JsonValue::array();
  for (int a = 0; a < 3; ++a) cells.push_back(mesh.n[a]);
  meshj["cells"] = std::move(cells);
  header["mesh"] = std::move(meshj);
  header["sampling"] =
      JsonValue(field.sampling == FieldSampling::nodal ? "nodal" : "cell_gauss");
  header["quantity"] = JsonValue(quantity);
  if (!config_echo.empty()) {
    JsonValue cfg = JsonValue::object();
    for (const auto& [key, value] : config_echo) cfg[key] = JsonValue(value);
    header["config"] = std::move(cfg);
  }
  header.write_file(base + ".json");
}

FieldFile read_field(const std::string& base) {
  std::ifstream jf(base + ".json");
  if (!jf) throw ParseError("cannot open file: " + base + ".json");
  nlohmann::json header;
  try {
    jf >> header;
  } catch (const std::exception& e) {
    throw ParseError(base + ".json: invalid JSON header: " + e.what());
  }

  FieldFile out;
  try {
    const auto hs = header.at("mesh").at("half_size_mm");
    const auto cells = header.at("mesh").at("cells");
    auto half = [&](int a) {
      return from_display(std::strtold(hs.at(a).get<std::string>().c_str(), nullptr),
                          kMm);
    };
    out.mesh = build_box_mesh(
        {half(0), half(1), half(2)},
        {cells.at(0).get<int>(), cells.at(1).get<int>(), cells.at(2).get<int>()});
    out.quantity = header.at("quantity").get<std::string>();
    out.field.sampling = header.at("sampling").get<std::string>() == "nodal"
                             ? FieldSampling::nodal
                             : FieldSampling::cell_gauss;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(base + ".json: malformed header: " + std::string(e.what()));
  }

  const Table t = read_table(base + ".csv");
  const bool is_stress = out.quantity == "stress";
  const std::string prefix = is_stress ? "sigma_" : out.quantity + "_";
  const std::string suffix = is_stress ? "_MPa" : "";
  const long double factor = is_stress ? kMPa : 1.0L;
  static const char* comp[6] = {"xx", "yy", "zz", "xy", "yz", "xz"};
  int cols[6];
  for (int c = 0; c < 6; ++c)
    cols[c] = t.column(prefix + comp[c] + suffix, base + ".csv");

  out.field.values.resize(out.field.expected_size(out.mesh));
  if (t.rows.size() != out.field.values.size())
    throw ParseError(base + ".csv: row count does not match the mesh header");
  for (size_t k = 0; k < t.rows.size(); ++k) {
    SymTensor2 v;
    for (int c = 0; c < 6; ++c) v[c] = from_display(t.rows[k][cols[c]], factor);
    out.field.values[k] = v;
  }
  return out;
}

std::string hash_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open file: " + path);
  uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
    for (std::streamsize i = 0; i < f.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!f) break;
  }
  char out[20];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace restress::io
