#ifndef RESTRESS_IO_CSV_HPP
#define RESTRESS_IO_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "restress/axisym.hpp"
#include "restress/field.hpp"
#include "restress/maxwell.hpp"
#include "restress/mesh.hpp"

namespace restress::io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Display units used in every file: mm, MPa, Angstrom.  Internally SI.
/// Conversions run through extended precision: the display value is
/// v * factor rounded once at 64-bit mantissa and printed with 21
/// significant digits, and parsing divides back at the same precision.
/// The composed error is below half an ulp of any double, so values
/// round-trip through files bit-exactly.
inline constexpr long double kMm = 1e3L;    // m -> mm
inline constexpr long double kMPa = 1e-6L;  // Pa -> MPa
inline constexpr long double kAngstrom = 1e10L;

std::string format_display(double v, long double factor);
double from_display(long double display_value, long double factor);

/// Stress profile CSV: header r_mm, sigma_rr_MPa, sigma_tt_MPa,
/// sigma_zz_MPa, optional u_rr_MPa, u_tt_MPa, u_zz_MPa.  Diameter-spanning
/// data is folded about the axis (r <- |r|), both halves kept, row order
/// preserved.  radius_bound, when given, rejects |r| beyond it.
axisym::AxisymStressProfile parse_profile_csv(
    const std::string& path, std::optional<double> radius_bound = {});

/// Writers accept optional comment lines, emitted as leading '#' rows (the
/// parsers skip them); the CLI uses these for the config echo.
void write_profile_csv(const std::string& path,
                       const axisym::AxisymStressProfile& profile,
                       const std::vector<std::string>& comments = {});

/// Lattice-spacing profile CSV for the d0 co-estimation: header r_mm,
/// d_rr_A, d_tt_A, d_zz_A, optional u_rr_A, u_tt_A, u_zz_A.
axisym::LatticeProfile parse_lattice_csv(const std::string& path,
                                         std::optional<double> radius_bound = {});

void write_lattice_csv(const std::string& path,
                       const axisym::LatticeProfile& lattice,
                       const std::vector<std::string>& comments = {});

/// Cube grid CSV: header x_mm, y_mm, z_mm, sigma_xx_MPa ... sigma_xz_MPa,
/// optional u_xx_MPa ... u_xz_MPa.  Points are bounds-checked against the
/// cube when a half size is given; duplicated points produce a warning and
/// are kept.
maxwell::StressSampleSet parse_grid_csv(const std::string& path,
                                        std::optional<double> half_size_bound = {},
                                        std::vector<std::string>* warnings = nullptr);

void write_grid_csv(const std::string& path,
                    const maxwell::StressSampleSet& samples,
                    const std::vector<std::string>& comments = {});

/// Grid field dump: <base>.csv holds x_mm, y_mm, z_mm and the six tensor
/// components; <base>.json holds schema_version, mesh dims, sampling
/// convention and the quantity tag ("stress" values are stored in MPa,
/// anything else dimensionless).
void write_field(const std::string& base, const BoxMesh& mesh,
                 const GridTensorField& field, const std::string& quantity,
                 const std::vector<std::pair<std::string, std::string>>& config_echo = {});

struct FieldFile {
  BoxMesh mesh;
  GridTensorField field;
  std::string quantity;
};
FieldFile read_field(const std::string& base);

/// FNV-1a 64-bit content hash, hex-encoded; provenance for reports.
std::string hash_file(const std::string& path);

}  // namespace restress::io

#endif
